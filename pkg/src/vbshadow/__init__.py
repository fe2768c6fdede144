"""Virtual and twisted virtual birack shadows, their modules, and the
enhanced counting invariants of virtual link diagrams."""

from .algebra import (FiniteBirack, KinkData, ShadowAction, TwistedBirack, attach_twist,
                      birack_from_tables, constant_action_birack, shadow_from_table,
                      trivial_shadow, vtsr_birack)
from .diagram import Diagram, RegionMap, add_kinks, format_diagram, parse_diagram, reverse_orientation
from .errors import *  # noqa: F401,F403
from .formats import (format_birack, format_module, format_shadow, parse_birack, parse_module,
                      parse_shadow)
from .kernel import ModuleDescriptor, brute_force_count
from .labeling import (enumerate_shadow_labelings, enumerate_x_labelings, phi_basic, phi_integral,
                       phi_per_framing, phi_shadow_integral, phi_shadow_per_framing)
from .module import (InvariantPolynomial, ModuleSpec, PresentationMatrix, constant_module,
                     module_from_blocks, phi_module_multiset, phi_module_poly, presentation_matrix,
                     solution_count)
from .search import SearchReport, enumerate_biracks, enumerate_twists, random_modules

__version__ = "0.1.0"
