"""
실행 매니페스트 엔티티
"""

import os
import sys
import platform
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Any, Optional


@dataclass
class ArtifactRecord:
    """산출물 또는 입력 파일 기록"""
    role: str
    path: str
    sha256: str
    size: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {"role": self.role, "path": self.path, "sha256": self.sha256, "size": self.size}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ArtifactRecord':
        return cls(role=data["role"], path=data["path"], sha256=data["sha256"], size=data.get("size", 0))


@dataclass
class RunManifest:
    """한 번의 명령 실행에 대한 재현 정보"""
    command: str
    config: Dict[str, Any]
    config_digest: str
    seeds: Dict[str, int]
    run_dir: str
    inputs: List[ArtifactRecord] = field(default_factory=list)
    artifacts: List[ArtifactRecord] = field(default_factory=list)
    started_at: datetime = field(default_factory=datetime.now)
    finished_at: Optional[datetime] = None
    status: str = "running"
    outcome: Optional[str] = None
    environment: Dict[str, str] = field(default_factory=lambda: {
        "python": sys.version.split()[0],
        "platform": platform.platform(),
        "pid": str(os.getpid())
    })

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "command": self.command,
            "config": self.config,
            "config_digest": self.config_digest,
            "seeds": self.seeds,
            "run_dir": self.run_dir,
            "inputs": [a.to_dict() for a in self.inputs],
            "artifacts": [a.to_dict() for a in self.artifacts],
            "started_at": self.started_at.isoformat(),
            "finished_at": self.finished_at.isoformat() if self.finished_at else None,
            "status": self.status,
            "outcome": self.outcome,
            "environment": self.environment
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunManifest':
        """딕셔너리에서 생성"""
        finished = data.get("finished_at")
        return cls(
            command=data["command"],
            config=data.get("config", {}),
            config_digest=data.get("config_digest", ""),
            seeds=data.get("seeds", {}),
            run_dir=data.get("run_dir", ""),
            inputs=[ArtifactRecord.from_dict(a) for a in data.get("inputs", [])],
            artifacts=[ArtifactRecord.from_dict(a) for a in data.get("artifacts", [])],
            started_at=datetime.fromisoformat(data["started_at"]) if data.get("started_at") else datetime.now(),
            finished_at=datetime.fromisoformat(finished) if finished else None,
            status=data.get("status", "unknown"),
            outcome=data.get("outcome"),
            environment=data.get("environment", {})
        )
