"""Density functionals and approximate progression search on integer interval unions.

Sets are finite unions of integer intervals with arbitrary-precision
endpoints.  Densities come back as certified enclosures at explicit
horizons; progressions come back as certificates that can be re-checked
with exact integer arithmetic.
"""
from .density import (DensityEstimate, Enclosure, WindowSpec, banach_r_window_value,
                      banach_sup_estimate, density_curve, horizon_grid, lbd_window_value,
                      log_density_at, partial_sum_log, partial_sum_r, r_density_at)
from .errors import (CertificationFailed, ElementCapExceeded, SearchSpaceExceeded,
                     SetSpecError, UndecidedComparison)
from .families import (gen_factorial_blocks, gen_mth_power_blocks, gen_periodic, gen_pow2_blocks,
                       gen_remark26_blocks, gen_sparse_blocks, gen_squared_seq, gen_squarefree,
                       generate)
from .intset import IntegerSet, intersect_window, member, normalize, predecessor
from .search import (ApproxParams, APResult, ProgressionCertificate, approx_witness, find_ap,
                     find_3term_geometric_approx, find_exact_3term_geometric, find_geometric,
                     find_power_ap, is_approx, verify_no_pow2_approx, verify_no_power_approx)
from .transforms import ceil_log2, ceil_root, log_image, power_image

__version__ = "0.1.0"
