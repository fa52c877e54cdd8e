from .scalars import RATIONAL, PrimeField, PrimeFieldElement, Rational, prime_field
from .matrix import DenseMatrix, MinorSpec, det_exact, det_laplace, det_multimodular
from .kernel import SextupleSystem, BorderSet
from .symmetric import SymmetricSystem
from .report import VerificationReport, IdentityRecord, Verdict

__all__ = [
    "RATIONAL", "PrimeField", "PrimeFieldElement", "Rational", "prime_field",
    "DenseMatrix", "MinorSpec", "det_exact", "det_laplace", "det_multimodular",
    "SextupleSystem", "BorderSet", "SymmetricSystem",
    "VerificationReport", "IdentityRecord", "Verdict",
]
