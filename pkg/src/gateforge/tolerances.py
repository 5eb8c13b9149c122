"""Named numeric tolerances used for every pass/fail verdict."""

GATE_EQUALITY = 1e-10  # Frobenius distance, synthesized evolution vs target gate
BLOCK_DENSE_AGREEMENT = 1e-12
SEPARABILITY = 1e-14  # off-diagonal mass in the control (x) target product eigenbasis
A2_INDEPENDENCE = 1e-14
ANSATZ_FACTORIZATION = 1e-14  # relative to ||V||_F
JITTER_RATIO_LOW = 0.45
JITTER_RATIO_HIGH = 0.55
NO_SYMMETRY_RESIDUAL = 0.5  # rotation residual above this: no global rotation symmetry
SYMMETRY_RESIDUAL = 1e-10  # rotation residual at or below this: symmetric
SPHERE_GAP = 1e-6  # SVD minimum vs brute-force sphere minimum
GATE_COMMUTATOR = 1e-12  # gate-level rotation commutator
COMMUTANT_TOL = 1e-9
DEGENERACY = 1e-8
SPAN_RESIDUAL = 1e-10
SPAN_DEFECT = 1e-9
JITTER_MAX_FRACTION = 0.1  # epsilon <= tau * this


def as_dict() -> dict[str, float]:
    return {k.lower(): v for k, v in globals().items() if k.isupper()}
