"""
reprodet - exact verification of bordered kernel determinant identities
"""

__version__ = "0.1.0"

from .config import Settings
from .core import DenseMatrix, SextupleSystem, SymmetricSystem, VerificationReport
from .app import main
