"""Fock-space and operator algebra on the truncated photon-phonon Hilbert space.

The two bosonic modes live on a tensor-product space with a fixed basis
ordering: the state with n photons and m phonons sits at index

    index(n, m) = n * (n_phonon_max + 1) + m

so the photon mode is the slow (left) factor of every Kronecker product.
Superoperators use column-stacking vectorization throughout the package:
vec(rho) stacks the columns of rho, hence vec(A X B) = kron(B.T, A) vec(X)
and the Hamiltonian part of a Liouvillian is -i*(kron(I, H) - kron(H.T, I)).
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import (DomainError, OperatorShapeError, SuperoperatorTypeError,
                     TruncationError)

#: magnitude below which assembled sparse entries are dropped
PRUNE_TOL = 1e-15

#: tolerance for Hermiticity assertions on assembled operators
HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class TruncatedSpace:
    """Truncated two-mode Fock space.

    Parameters
    ----------
    n_photon_max : int
        Highest photon Fock index kept (>= 2).
    n_phonon_max : int
        Highest phonon Fock index kept (>= 4).
    """

    n_photon_max: int
    n_phonon_max: int

    def __post_init__(self):
        if self.n_photon_max < 2:
            raise TruncationError(
                f"n_photon_max must be >= 2, got {self.n_photon_max}")
        if self.n_phonon_max < 4:
            raise TruncationError(
                f"n_phonon_max must be >= 4, got {self.n_phonon_max}")

    @property
    def photon_dim(self) -> int:
        return self.n_photon_max + 1

    @property
    def phonon_dim(self) -> int:
        return self.n_phonon_max + 1

    @property
    def dim(self) -> int:
        return self.photon_dim * self.phonon_dim

    def index(self, n: int, m: int) -> int:
        """Basis index of the Fock state with n photons and m phonons."""
        if not (0 <= n <= self.n_photon_max and 0 <= m <= self.n_phonon_max):
            raise DomainError(
                f"Fock indices (n={n}, m={m}) outside truncation "
                f"({self.n_photon_max}, {self.n_phonon_max})")
        return n * self.phonon_dim + m


def default_space() -> TruncatedSpace:
    """Default truncation for weak-driving regimes (photon 3, phonon 11)."""
    return TruncatedSpace(n_photon_max=3, n_phonon_max=11)


def _prune(m, tol=PRUNE_TOL):
    m = m.tocsr()
    if m.nnz:
        m.data[np.abs(m.data) < tol] = 0.0
        m.eliminate_zeros()
    return m


class CsOperator:
    """Complex sparse operator on a truncated space or its superoperator space.

    Thin algebraic wrapper around a CSR matrix. `space` is None for
    single-mode building blocks that have not been embedded yet; `superop`
    marks dim^2 x dim^2 matrices acting on vectorized density matrices.
    Instances are immutable in practice: no method mutates `entries`.
    """

    __slots__ = ("space", "entries", "superop")

    def __init__(self, entries, space=None, superop=False):
        entries = _prune(sp.csr_matrix(entries, dtype=complex))
        if entries.shape[0] != entries.shape[1]:
            raise OperatorShapeError(f"operator must be square, got {entries.shape}")
        if space is not None:
            expected = space.dim ** 2 if superop else space.dim
            if entries.shape[0] != expected:
                raise OperatorShapeError(
                    f"entries are {entries.shape[0]}x{entries.shape[0]} but the "
                    f"space needs {expected}x{expected} (superop={superop})")
        self.space = space
        self.entries = entries
        self.superop = superop

    @property
    def shape(self):
        return self.entries.shape

    @property
    def nnz(self) -> int:
        return self.entries.nnz

    def to_dense(self) -> np.ndarray:
        return self.entries.toarray()

    def dag(self) -> "CsOperator":
        """Adjoint (conjugate transpose)."""
        return CsOperator(self.entries.conj().T, self.space, self.superop)

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        diff = self.entries - self.entries.conj().T
        return diff.nnz == 0 or np.abs(diff.data).max() < tol

    def _require_compatible(self, other):
        if not isinstance(other, CsOperator):
            raise TypeError(f"expected CsOperator, got {type(other).__name__}")
        if self.superop != other.superop:
            raise SuperoperatorTypeError("cannot mix operators and superoperators")
        if self.shape != other.shape:
            raise OperatorShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._require_compatible(other)
        return CsOperator(self.entries + other.entries, self.space or other.space,
                          self.superop)

    def __sub__(self, other):
        self._require_compatible(other)
        return CsOperator(self.entries - other.entries, self.space or other.space,
                          self.superop)

    def __neg__(self):
        return CsOperator(-self.entries, self.space, self.superop)

    def __mul__(self, scalar):
        if isinstance(scalar, CsOperator):
            raise TypeError("use @ for operator composition")
        return CsOperator(self.entries * complex(scalar), self.space, self.superop)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._require_compatible(other)
        return CsOperator(self.entries @ other.entries, self.space or other.space,
                          self.superop)

    def __repr__(self):
        kind = "superoperator" if self.superop else "operator"
        return (f"CsOperator({kind}, shape={self.shape}, nnz={self.nnz}, "
                f"space={self.space})")


def annihilation(n_max: int) -> CsOperator:
    """Single-mode annihilation operator on a Fock ladder truncated at n_max.

    Entries sqrt(k) at (k-1, k) for k = 1..n_max.
    """
    if n_max < 1:
        raise TruncationError(f"n_max must be >= 1, got {n_max}")
    mat = sp.diags(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1,
                   shape=(n_max + 1, n_max + 1), dtype=complex)
    return CsOperator(mat)


def creation(n_max: int) -> CsOperator:
    """Single-mode creation operator, the adjoint of `annihilation`."""
    return annihilation(n_max).dag()


def number(n_max: int) -> CsOperator:
    """Single-mode number operator diag(0..n_max)."""
    if n_max < 1:
        raise TruncationError(f"n_max must be >= 1, got {n_max}")
    return CsOperator(sp.diags(np.arange(n_max + 1, dtype=float), 0, dtype=complex))


def identity(dim: int) -> CsOperator:
    """Identity on a bare dim-dimensional factor."""
    return CsOperator(sp.identity(dim, dtype=complex, format="csr"))


def embed(op: CsOperator, which_mode: str, space: TruncatedSpace) -> CsOperator:
    """Lift a single-mode operator onto the full tensor-product space.

    Photon operators become kron(op, I_phonon), phonon operators
    kron(I_photon, op), matching the fixed basis ordering.
    """
    if op.superop:
        raise SuperoperatorTypeError("cannot embed a superoperator")
    if which_mode == "photon":
        if op.shape[0] != space.photon_dim:
            raise OperatorShapeError(
                f"photon operator is {op.shape[0]}-dimensional but the space "
                f"has photon_dim={space.photon_dim}")
        full = sp.kron(op.entries, sp.identity(space.phonon_dim, dtype=complex))
    elif which_mode == "phonon":
        if op.shape[0] != space.phonon_dim:
            raise OperatorShapeError(
                f"phonon operator is {op.shape[0]}-dimensional but the space "
                f"has phonon_dim={space.phonon_dim}")
        full = sp.kron(sp.identity(space.photon_dim, dtype=complex), op.entries)
    else:
        raise ValueError(f"which_mode must be 'photon' or 'phonon', got {which_mode!r}")
    return CsOperator(full, space)


def mode_operators(space: TruncatedSpace):
    """Annihilation operators (a, b) of the photon and phonon modes."""
    a = embed(annihilation(space.n_photon_max), "photon", space)
    b = embed(annihilation(space.n_phonon_max), "phonon", space)
    return a, b


def vec(matrix: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    matrix = np.asarray(matrix)
    return matrix.reshape(-1, order="F")


def unvec(vector: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of `vec` for a dim x dim matrix."""
    vector = np.asarray(vector)
    if vector.size != dim * dim:
        raise OperatorShapeError(f"vector of size {vector.size} is not {dim}x{dim}")
    return vector.reshape((dim, dim), order="F")


def trace_vector(dim: int) -> np.ndarray:
    """Row vector t with t @ vec(rho) = trace(rho)."""
    t = np.zeros(dim * dim)
    t[:: dim + 1] = 1.0
    return t


def expect(op: CsOperator, rho: np.ndarray) -> complex:
    """Tr[op rho] for a sparse operator and a dense matrix."""
    if op.superop:
        raise SuperoperatorTypeError("expectation values need a plain operator")
    return complex(op.entries.multiply(np.asarray(rho).T).sum())


def apply_superop(superop: CsOperator, rho: np.ndarray) -> np.ndarray:
    """unvec(L @ vec(rho)) for a superoperator L."""
    if not superop.superop:
        raise SuperoperatorTypeError("apply_superop needs a superoperator")
    dim = int(round(np.sqrt(superop.shape[0])))
    return unvec(superop.entries @ vec(rho), dim)


def lindblad_superop(c: CsOperator) -> CsOperator:
    """Dissipator superoperator D with D vec(rho) = vec(c rho c+ - {c+c, rho}/2)."""
    if c.superop:
        raise SuperoperatorTypeError("collapse operator is already a superoperator")
    if c.space is None:
        raise OperatorShapeError("collapse operator must act on the full space")
    mat = c.entries
    cdc = (mat.conj().T @ mat).tocsr()
    eye = sp.identity(mat.shape[0], dtype=complex, format="csr")
    d = (sp.kron(mat.conj(), mat)
         - 0.5 * sp.kron(eye, cdc)
         - 0.5 * sp.kron(cdc.T, eye))
    return CsOperator(d, c.space, superop=True)


def hamiltonian_superop(h: CsOperator) -> CsOperator:
    """Coherent part -i [H, .] as a superoperator."""
    if h.superop:
        raise SuperoperatorTypeError("Hamiltonian is already a superoperator")
    if h.space is None:
        raise OperatorShapeError("Hamiltonian must act on the full space")
    mat = h.entries
    eye = sp.identity(mat.shape[0], dtype=complex, format="csr")
    return CsOperator(-1j * (sp.kron(eye, mat) - sp.kron(mat.T, eye)),
                      h.space, superop=True)


def basis_state(space: TruncatedSpace, n: int, m: int) -> np.ndarray:
    """Dense ket |n, m>."""
    v = np.zeros(space.dim, dtype=complex)
    v[space.index(n, m)] = 1.0
    return v


def fock_density(space: TruncatedSpace, n: int, m: int) -> np.ndarray:
    """Dense projector |n, m><n, m|."""
    v = basis_state(space, n, m)
    return np.outer(v, v.conj())
