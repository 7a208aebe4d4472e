"""
Effective Hamiltonian on the electronic doublet (optionally extended by a
spin set |M>) built from field tensors F^a_mn, operator matrices and
empirical coefficients:

    H_eff = C1 F^a_mr op1^a_rn + C2 F^a_mp F^b_pr op2^ab_rn

with summation over repeated indices.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from geophase.exceptions import InputError
from gauge_fields.fields import FIELD_KINDS

logger = logging.getLogger(__name__)

ELECTRONIC_DIM = 2
AXES = 3
POINTWISE = 'pointwise'
EXPECTATION = 'expectation'
MODES = (POINTWISE, EXPECTATION)
HERMITICITY_TOLERANCE = 1e-10


def _as_complex(name: str, value, shape) -> Optional[np.ndarray]:
    if value is None:
        return None
    array = np.asarray(value, dtype=complex)
    if array.shape != tuple(shape):
        raise InputError(f"{name} must have shape {tuple(shape)}, got {array.shape}")
    return array


@dataclass
class EffHSpec:
    """
    F[a][m][n] is either the field at one nuclear point (mode 'pointwise') or
    its expectation value in a nuclear state supplied by the caller
    (mode 'expectation'); the contraction is the same.
    """
    F: np.ndarray
    C1: float = 0.0
    C2: float = 0.0
    op1: Optional[np.ndarray] = None
    op2: Optional[np.ndarray] = None
    mode: str = POINTWISE
    spin_dim: int = 1
    Op1: Optional[np.ndarray] = None
    Op2: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"Unknown mode {self.mode!r}; expected one of {MODES}")
        self.spin_dim = int(self.spin_dim)
        if self.spin_dim < 1:
            raise InputError(f"spin_dim must be at least 1, got {self.spin_dim}")
        self.C1, self.C2 = float(self.C1), float(self.C2)
        n = ELECTRONIC_DIM
        d = self.dimension
        self.F = _as_complex('F', self.F, (AXES, n, n))
        self.op1 = _as_complex('op1', self.op1, (AXES, n, n))
        self.op2 = _as_complex('op2', self.op2, (AXES, AXES, n, n))
        self.Op1 = _as_complex('Op1', self.Op1, (AXES, d, d))
        self.Op2 = _as_complex('Op2', self.Op2, (AXES, AXES, d, d))
        if self.has_spin:
            self._require('Op1', self.Op1, self.C1)
            self._require('Op2', self.Op2, self.C2)
        else:
            self._require('op1', self.op1, self.C1)
            self._require('op2', self.op2, self.C2)

    @staticmethod
    def _require(name, operator, coefficient):
        if coefficient != 0.0 and operator is None:
            raise InputError(f"{name} is required when its coefficient is non-zero")

    @property
    def has_spin(self) -> bool:
        return self.spin_dim > 1 or self.Op1 is not None or self.Op2 is not None

    @property
    def dimension(self) -> int:
        return ELECTRONIC_DIM * self.spin_dim


def _hermitian_part(H: np.ndarray) -> np.ndarray:
    deviation = float(np.max(np.abs(H - H.conj().T)))
    if deviation > HERMITICITY_TOLERANCE:
        logger.warning(f"Effective Hamiltonian deviates from hermiticity by {deviation:.3e}; symmetrizing")
    return 0.5 * (H + H.conj().T)


def build_effH(spec: EffHSpec) -> np.ndarray:
    d = spec.dimension
    H = np.zeros((d, d), dtype=complex)
    if not spec.has_spin:
        if spec.C1:
            H += spec.C1 * np.einsum('amr,arn->mn', spec.F, spec.op1)
        if spec.C2:
            H += spec.C2 * np.einsum('amp,bpr,abrn->mn', spec.F, spec.F, spec.op2)
    else:
        # F acts on the orbital factor of |m>|M>
        spin_identity = np.eye(spec.spin_dim)
        lifted = np.array([np.kron(F_a, spin_identity) for F_a in spec.F])
        if spec.C1:
            H += spec.C1 * np.einsum('amr,arn->mn', lifted, spec.Op1)
        if spec.C2:
            H += spec.C2 * np.einsum('amp,bpr,abrn->mn', lifted, lifted, spec.Op2)
    logger.debug(f"H_eff ({spec.mode}, dimension {d}) built with C1={spec.C1}, C2={spec.C2}")
    return _hermitian_part(H)


def flux_tensor(table, kind: str) -> np.ndarray:
    """Extrapolated fluxes of a flux table as an F tensor along the seam (Z) axis"""
    if kind not in FIELD_KINDS:
        raise InputError(f"Unknown field kind {kind!r}")
    limits = table.limits(kind)
    if np.any(np.isnan(limits)):
        raise InputError(f"The {table.representation} {kind} fluxes have entries without a limit")
    F = np.zeros((AXES, ELECTRONIC_DIM, ELECTRONIC_DIM), dtype=complex)
    F[2] = limits
    return F
