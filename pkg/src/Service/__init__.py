"""
Service implementations for wmforge
"""

from .data_service import DataService, sample_size, render_text_bitmap
from .model_service import ModelService, FORMAT_VERSION
from .gan_losses import (
    loss_gan,
    loss_wm,
    loss_wm_untargeted,
    loss_pert,
    per_image_l2,
    generator_objective
)
from .eval_service import EvalService, energy_fraction_in_region
from .embed_service import EmbedService
from .detect_service import DetectService, trigger_from_perturbation
from .remove_service import RemoveService

__all__ = [
    'DataService',
    'sample_size',
    'render_text_bitmap',
    'ModelService',
    'FORMAT_VERSION',
    'loss_gan',
    'loss_wm',
    'loss_wm_untargeted',
    'loss_pert',
    'per_image_l2',
    'generator_objective',
    'EvalService',
    'energy_fraction_in_region',
    'EmbedService',
    'DetectService',
    'trigger_from_perturbation',
    'RemoveService'
]
