"""Exact analysis of mass-action chemical reaction networks.

Typical use::

    from crnkit import load, structure, siphon_report
    net = load("mckeithan")
    structure(net).deficiency     # 0
"""

from ._data import load
from .dynamics import lyapunov_monitor, rhs, simulate, trajectory_hull
from .elimination import Parametrization, eliminate_linear, verify_invariant
from .errors import CRNError, InputError
from .inject import InjectivityVerdict, injectivity
from .netio import parse_assignment, parse_network, parse_point, serialize_network
from .network import (
    Network,
    class_from_totals,
    class_vertices,
    compatibility_class,
    complex_matrix,
    conservation_basis,
    face_of_class,
    incidence_matrix,
    stoichiometric_matrix,
    structure,
)
from .polytope import Polytope, aug_mv, hull, minkowski_sum, mixed_volume, newton_polytope, ssp_mv, volume
from .siphons import minimal_siphons, siphon_report
from .toric import (
    birch_point,
    cayley_conditions,
    complex_balanced_point,
    is_complex_balanced,
    lyapunov,
    tree_labels,
    tree_labels_by_minors,
)

__version__ = "0.1.0"
