"""
트리거 / 이미지 PNG 입출력
"""

import io
import base64
import logging
from pathlib import Path

import numpy as np
import torch
from PIL import Image

logger = logging.getLogger(__name__)


def tensor_to_image(tensor: torch.Tensor) -> Image.Image:
    """(C,H,W) [0,1] 텐서를 PIL 이미지로 변환"""
    array = tensor.detach().cpu().clamp(0.0, 1.0).mul(255.0).round().to(torch.uint8).numpy()
    if array.shape[0] == 1:
        return Image.fromarray(array[0])
    return Image.fromarray(np.ascontiguousarray(np.transpose(array, (1, 2, 0))))


def save_png(tensor: torch.Tensor, file_path: str, scale: int = 1) -> str:
    """텐서를 PNG 로 저장 (scale 배 최근접 확대)"""
    image = tensor_to_image(tensor)
    if scale > 1:
        image = image.resize((image.width * scale, image.height * scale), Image.NEAREST)
    Path(file_path).parent.mkdir(parents=True, exist_ok=True)
    image.save(file_path, format='PNG')
    logger.debug(f"PNG 저장: {file_path}")
    return file_path


def load_grayscale(file_path: str) -> torch.Tensor:
    """흑백 PNG 를 (H,W) [0,1] 텐서로 로드"""
    with Image.open(file_path) as image:
        array = np.asarray(image.convert('L'), dtype=np.float32) / 255.0
    return torch.from_numpy(array.copy())


def png_data_uri(file_path: str) -> str:
    """HTML 삽입용 base64 data URI"""
    with open(file_path, 'rb') as f:
        encoded = base64.b64encode(f.read()).decode('ascii')
    return f"data:image/png;base64,{encoded}"


def tensor_data_uri(tensor: torch.Tensor, scale: int = 4) -> str:
    """텐서를 바로 data URI 로 인코딩"""
    image = tensor_to_image(tensor)
    if scale > 1:
        image = image.resize((image.width * scale, image.height * scale), Image.NEAREST)
    buffer = io.BytesIO()
    image.save(buffer, format='PNG')
    return "data:image/png;base64," + base64.b64encode(buffer.getvalue()).decode('ascii')
