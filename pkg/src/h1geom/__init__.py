"""Sub-Riemannian geometry of the first Heisenberg group.

Group structure and left-invariant metric, closed-form geodesics and
Jacobi fields, surface invariants (horizontal Gauss map, characteristic
field, shape operator, mean curvatures, sub-Riemannian area), the
second-variation index form and stability operator, and numerical
instability certificates for the minimal helicoids and catenoids.
"""

from .core import (FrameField, FrameVector, ORIGIN, Point, covariant_derivative,
                   cross, curvature_R, dilate, dot, euclidean_to_frame,
                   frame_at, frame_to_euclidean, group_inverse, group_mul,
                   jop, ricci, rotate_z)
from .errors import (CertificateNotFound, ConfigError, GeometryError,
                     NonFiniteValue, SingularPoint, StoppedAtSingular,
                     TubeConditionViolated, TubeTooSmall)
from .geodesics import (GeodesicArc, JacobiSample, exp_geodesic, exp_point,
                        helpers_fgh, jacobi_field, jacobi_residual)
from .numerics import (DiffSpec, QuadratureSpec, central_diff,
                       gauss_legendre_1d, integrate_2d)
from .stability import (InstabilityCertificate, PhiKDelta, Profile,
                        TestFunction, VerticalVariation, boundary_flux,
                        bracket_integral, certify_instability_h2,
                        certify_instability_nosing, index_form_I,
                        jacobi_vertical_quadratic, l_nh_closed, operator_L,
                        q_form, second_variation_direct, separable,
                        vertical_variation_area, z_derivative)
from .surfaces import (CatenoidChart, Chart, HelicoidChart, SurfaceFrame,
                       VerticalPlaneChart, area, area_element, catalog_surface,
                       characteristic_ray, mean_curvatures, paraboloid_chart,
                       plane_chart, ruled_coordinates, singular_locus,
                       surface_frame)

__version__ = "0.1.0"
