#!/usr/bin/env python3
"""
wmforge - 백도어 워터마크 삽입 / GAN 역추적 탐지 / unlearning 제거
Layered modular architecture

사용법:
    wmforge embed    --config CFG [--seed N] [--out DIR]
    wmforge detect   --config CFG --model CKPT
    wmforge remove   --config CFG --model CKPT --report REPORT [--spec SPEC]
    wmforge evaluate --config CFG --model CKPT --spec SPEC [--report REPORT]
    wmforge sweep    --config CFG --model CKPT --report REPORT --spec SPEC
    wmforge pipeline --config CFG
"""

import sys
import os
import logging
import argparse

# 프로젝트 루트를 Python 경로에 추가
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

# 서드파티 라이브러리 로거 억제 (다른 모듈이 임포트되기 전에 설정)
for logger_name in ('PIL', 'PIL.PngImagePlugin', 'urllib3', 'torchvision'):
    logging.getLogger(logger_name).setLevel(logging.WARNING)

from src.Controller import WatermarkController, COMMANDS
from src.Utils import setup_logging

# 명령별 필수 인자
REQUIRED = {
    'embed': (),
    'detect': ('model',),
    'remove': ('model', 'report'),
    'evaluate': ('model', 'spec'),
    'sweep': ('model', 'report', 'spec'),
    'pipeline': (),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='wmforge',
        description='Embed, detect/reverse and remove backdoor-based watermarks in image classifiers.'
    )
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--config', required=True, help='experiment config (YAML)')
    parser.add_argument('--model', help='classifier checkpoint')
    parser.add_argument('--report', help='detection_report.json from a detect run')
    parser.add_argument('--spec', help='watermark_spec.pt from an embed run')
    parser.add_argument('--seed', type=int, help='override the config seed')
    parser.add_argument('--out', help='parent directory for the run directory')
    return parser


def main(argv=None) -> int:
    """메인 함수"""
    parser = build_parser()
    args = parser.parse_args(argv)

    missing = [f"--{name}" for name in REQUIRED[args.command] if getattr(args, name) is None]
    if missing:
        parser.print_usage(sys.stderr)
        print(f"wmforge {args.command}: missing required option(s): {', '.join(missing)}", file=sys.stderr)
        return 2

    setup_logging()

    controller = WatermarkController()
    return controller.execute(
        args.command,
        config_path=args.config,
        model_path=args.model,
        report_path=args.report,
        spec_path=args.spec,
        seed=args.seed,
        out=args.out
    )


if __name__ == "__main__":
    sys.exit(main())
