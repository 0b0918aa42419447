"""
애플리케이션 설정 관리 (환경 변수 기반)
"""

import os
from typing import Dict, Any
from dataclasses import dataclass
from dotenv import load_dotenv

# 환경 변수 로드
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


@dataclass
class RuntimeConfig:
    """실행 환경 설정"""
    data_dir: str = "./data"
    runs_dir: str = "./runs"
    device: str = "auto"  # auto, cpu, cuda
    download: bool = True
    num_workers: int = 0

    @classmethod
    def from_env(cls) -> 'RuntimeConfig':
        """환경 변수에서 설정 로드"""
        return cls(
            data_dir=os.getenv('WMFORGE_DATA_DIR', './data'),
            runs_dir=os.getenv('WMFORGE_RUNS_DIR', './runs'),
            device=os.getenv('WMFORGE_DEVICE', 'auto'),
            download=_env_bool('WMFORGE_DOWNLOAD', 'true'),
            num_workers=int(os.getenv('WMFORGE_NUM_WORKERS', '0'))
        )


@dataclass
class UIConfig:
    """UI 설정"""
    theme: str = "magenta"
    show_progress: bool = True

    @classmethod
    def from_env(cls) -> 'UIConfig':
        """환경 변수에서 설정 로드"""
        return cls(
            theme=os.getenv('UI_THEME', 'magenta'),
            show_progress=_env_bool('UI_SHOW_PROGRESS', 'true')
        )


@dataclass
class LoggingConfig:
    """로깅 설정"""
    level: str = "INFO"
    log_dir: str = "logs"
    max_file_size: int = 10 * 1024 * 1024  # 10MB
    backup_count: int = 5
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    @classmethod
    def from_env(cls) -> 'LoggingConfig':
        """환경 변수에서 설정 로드"""
        return cls(
            level=os.getenv('LOG_LEVEL', 'INFO'),
            log_dir=os.getenv('LOG_DIR', 'logs'),
            max_file_size=int(os.getenv('LOG_MAX_FILE_SIZE', str(10 * 1024 * 1024))),
            backup_count=int(os.getenv('LOG_BACKUP_COUNT', '5')),
            format=os.getenv('LOG_FORMAT', '%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        )


class AppConfig:
    """전체 애플리케이션 설정 관리"""

    def __init__(self):
        self.runtime = RuntimeConfig.from_env()
        self.ui = UIConfig.from_env()
        self.logging = LoggingConfig.from_env()

    def validate(self) -> Dict[str, bool]:
        """설정 유효성 검사"""
        return {
            'device': self.runtime.device == 'auto' or self.runtime.device.split(':')[0] in ('cpu', 'cuda'),
            'num_workers': self.runtime.num_workers >= 0,
            'log_level': self.logging.level.upper() in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'),
        }

    def get_validation_summary(self) -> str:
        """설정 검증 요약 반환"""
        results = self.validate()
        return "\n".join(f"{'✅' if valid else '❌'} {key}" for key, valid in results.items())

    def to_dict(self) -> Dict[str, Any]:
        """설정을 딕셔너리로 변환"""
        return {
            'runtime': {
                'data_dir': self.runtime.data_dir,
                'runs_dir': self.runtime.runs_dir,
                'device': self.runtime.device,
                'download': self.runtime.download,
                'num_workers': self.runtime.num_workers
            },
            'ui': {
                'theme': self.ui.theme,
                'show_progress': self.ui.show_progress
            },
            'logging': {
                'level': self.logging.level,
                'log_dir': self.logging.log_dir,
                'max_file_size': self.logging.max_file_size,
                'backup_count': self.logging.backup_count
            }
        }


# 전역 설정 인스턴스
config = AppConfig()
