"""Central numerical tolerance configuration.

Every tolerance used by the library lives in one record so test suites and
callers can tighten or relax them coherently.  All values are relative and
are multiplied by a magnitude factor (typically 1 + matrix norm) at the
point of use.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    unitary: float = 1e-12      # unitarity residual of triangularizing bases
    determinant: float = 1e-13  # Moebius denominators treated as singular below this
    identity: float = 1e-9      # algebraic identities between scalar invariants
    classify: float = 1e-9      # spectral classification snapping to degenerate classes
    geometry: float = 1e-12     # model membership and boundary snapping


DEFAULT_TOLERANCES = Tolerances()
