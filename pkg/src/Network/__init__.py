"""
Neural network definitions for wmforge
"""

from .lenet import LeNet5
from .resnet import ResNet18, ResidualBlock
from .classifier import Classifier, create_classifier, INPUT_SHAPES, NORMALIZATION
from .gan import PerturbationGenerator, Discriminator

__all__ = [
    'LeNet5',
    'ResNet18',
    'ResidualBlock',
    'Classifier',
    'create_classifier',
    'INPUT_SHAPES',
    'NORMALIZATION',
    'PerturbationGenerator',
    'Discriminator'
]
