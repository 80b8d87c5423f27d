"""ellgenus: equivariant elliptic genera from fixed-point data.

An exact/numeric engine for the index characters of circle-equivariant
Dirac operators on fibrations, computed through Lefschetz fixed-point
formulas as q-series with Laurent-z and base-cohomology coefficients,
with machine verification of rigidity, vanishing and Jacobi-form
transformation behavior at desk scale.
"""

__version__ = "0.1.0"

from .builtin_models import BUILTIN_MODELS, builtin
from .cohomology import NilAlgebra, NilPoly, NilVar, PushForward
from .errors import (ContourError, EllgenusError, InterpolationError,
                     ModelError, NonUnitError, PoleError, RingMismatchError,
                     SeriesError, ThetaError, TruncationError)
from .expand import (bundle_expand, char_table_series, index_character,
                     index_class, lefschetz_kernel)
from .genus import GenusSeries, genus_point, genus_qseries
from .laurent import LaurentZ, sm
from .model import (FixedComponent, FixedPointModel, LoopDirac, SpincStack,
                    TwistBundle, WittenStack, epsilon_A, validate_model)
from .modelfile import load_model, parse_model, serialize_model
from .series import QSeries, binomial_factor, product_of_factors
from .theta import (ALL_KINDS, THETA, THETA1, THETA2, THETA3,
                    CharAnomalyInput, Lattice, Scalar, ThetaArg, ThetaSeries,
                    char_anomaly, check_elliptic_shift, check_modular,
                    lattice_theta, theta_hat_qexp, theta_numeric,
                    theta_prime_zero, theta_qexp)
from .verify import (AnomalyReport, JacobiCheckReport, RigidityVerdict,
                     VanishingReport, anomaly_n, check_modular_weight,
                     check_quasi_periodicity, check_rigidity,
                     check_vanishing, count_zeros)
from .zfrac import FracZ
