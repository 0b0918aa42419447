"""
파일 관리 유틸리티
"""

import os
import json
import hashlib
import logging
from datetime import datetime
from typing import Dict, Any, Optional
from pathlib import Path

logger = logging.getLogger(__name__)


class FileManager:
    """파일 관리 유틸리티 클래스"""

    @staticmethod
    def ensure_directory(directory_path: str) -> bool:
        """디렉토리가 존재하는지 확인하고 없으면 생성"""
        try:
            Path(directory_path).mkdir(parents=True, exist_ok=True)
            return True
        except Exception as e:
            logger.error(f"디렉토리 생성 실패: {directory_path} - {e}")
            return False

    @staticmethod
    def create_run_directory(runs_dir: str, command: str) -> str:
        """runs/<timestamp>-<command>/ 형태의 새 실행 디렉토리 생성"""
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        base = os.path.join(runs_dir, f"{timestamp}-{command}")
        run_dir = base

        # 같은 초에 두 번 실행된 경우 접미사로 충돌 방지
        counter = 1
        while os.path.exists(run_dir):
            run_dir = f"{base}_{counter}"
            counter += 1

        Path(run_dir).mkdir(parents=True)
        logger.debug(f"실행 디렉토리 생성: {run_dir}")
        return run_dir

    @staticmethod
    def save_json(data: Dict[str, Any], file_path: str) -> str:
        """JSON 데이터를 파일에 저장"""
        directory = os.path.dirname(file_path)
        if directory:
            FileManager.ensure_directory(directory)

        content = json.dumps(data, ensure_ascii=False, indent=2, sort_keys=False)
        FileManager.safe_write(file_path, content + "\n")
        logger.debug(f"JSON 파일 저장 완료: {file_path}")
        return file_path

    @staticmethod
    def load_json(file_path: str, default: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """JSON 파일에서 데이터 로드 (default 미지정 시 누락 파일은 예외)"""
        if not os.path.exists(file_path):
            if default is not None:
                logger.debug(f"파일이 존재하지 않음: {file_path}")
                return default
            raise FileNotFoundError(file_path)

        with open(file_path, 'r', encoding='utf-8') as f:
            data = json.load(f)

        logger.debug(f"JSON 파일 로드 완료: {file_path}")
        return data

    @staticmethod
    def sha256_file(file_path: str, chunk_size: int = 1 << 20) -> str:
        """파일 내용의 sha256 해시"""
        digest = hashlib.sha256()
        with open(file_path, 'rb') as f:
            for chunk in iter(lambda: f.read(chunk_size), b''):
                digest.update(chunk)
        return digest.hexdigest()

    @staticmethod
    def sha256_json(data: Any) -> str:
        """정규화된 JSON 표현의 sha256 해시"""
        canonical = json.dumps(data, sort_keys=True, separators=(',', ':'), ensure_ascii=True)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @staticmethod
    def get_file_info(file_path: str) -> Optional[Dict[str, Any]]:
        """파일 정보 반환"""
        if not os.path.exists(file_path):
            return None

        stat = os.stat(file_path)
        return {
            "size": stat.st_size,
            "modified": datetime.fromtimestamp(stat.st_mtime).isoformat(),
            "sha256": FileManager.sha256_file(file_path)
        }

    @staticmethod
    def safe_write(file_path: str, content: str, encoding: str = 'utf-8') -> bool:
        """안전한 파일 쓰기 (임시 파일 사용)"""
        temp_path = f"{file_path}.tmp"
        try:
            with open(temp_path, 'w', encoding=encoding, newline='') as f:
                f.write(content)
            os.replace(temp_path, file_path)
            logger.debug(f"안전한 파일 쓰기 완료: {file_path}")
            return True
        finally:
            if os.path.exists(temp_path):
                try:
                    os.remove(temp_path)
                except OSError:
                    pass
