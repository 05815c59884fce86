"""
Exact algebra layers for the Weil character engine
"""
from .errors import WeilError
from .finmod import FinModule, ModuleHom, Submodule
from .bforms import BilinearForm
from .gauss import FourthRoot
from .spgroup import SpElement, SymplecticModule
from .zmod import AdditiveCharacter, Ring, ring_new

__all__ = [
    'AdditiveCharacter',
    'BilinearForm',
    'FinModule',
    'FourthRoot',
    'ModuleHom',
    'Ring',
    'SpElement',
    'Submodule',
    'SymplecticModule',
    'WeilError',
    'ring_new',
]
