"""2-saturating sets on the elliptic quadric of PG(3,q) and bounds on l_q(3t+1, 3)."""

from .bounds import bound_a, bound_b, bound_c, bound_d, bound_e, known_bound, solve_W
from .estimator import GreedySaturator
from .field import FieldSpec, build_field, field_of_order
from .geometry import ProjectiveSpace3, theta
from .quadric import EllipticQuadric
from .saturator import GreedyConfig, run, verify_2saturating

__all__ = [
    "EllipticQuadric",
    "FieldSpec",
    "GreedyConfig",
    "GreedySaturator",
    "ProjectiveSpace3",
    "bound_a",
    "bound_b",
    "bound_c",
    "bound_d",
    "bound_e",
    "build_field",
    "field_of_order",
    "known_bound",
    "run",
    "solve_W",
    "theta",
    "verify_2saturating",
]
