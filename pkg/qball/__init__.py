from qball.main import RunConfig, cli, run
from qball._lib.scalar import Q, Q_HALF, Scalar, evaluate_at, q_integer, s_power
from qball._lib.algebra import (
    Element,
    NormalMonomial,
    Shape,
    bidegree,
    multiply,
    normal_form,
    project_finite,
    star,
)
from qball._lib.action import OPPOSITE, STANDARD, QGen, act, act_on_z, act_on_zstar, counit, weight_of
from qball._lib.covariance import validate_covariance
from qball._lib.harmonic import basis, check_invariance, check_positive, degree_bound, gamma_rho, gram, integrate, t_matrix
from qball._lib.expr import format_element, parse, parse_element
