"""Crooked functions on GF(2^n), the line parallelisms of PG(n,2) they
induce through the pair coloring, and Preparata-like partitions of the
binary Hamming code."""

from .catalog import (FamilySpec, bcl_spec, build_from_string, catalog_build,
                      gold_spec, inverse_spec, kasami_spec, lut_load, lut_store,
                      parse_function_spec, trivariate_spec, welch_spec)
from .codes import (CodewordXY, TranslateSet, assign_translate, enumerate_hamming,
                    enumerate_preparata, hamming_contains, min_distance,
                    partition_parallelism, preparata_contains, translates)
from .coloring import build_parallelism, cf_eval, hyperplane_image, line_color
from .equivalence import (Collineation, SearchResult, Witness, collineation_apply,
                          collineation_from_blocks, search_equivalence,
                          verify_witness, witness_from_affine, witness_from_linear)
from .geometry import (Parallelism, all_lines, compare_parallelisms, gaussian,
                       hyperplane_line_count, hyperplane_points, verify_parallelism,
                       verify_spread)
from .gf2 import (DEFAULT_MODULI, BinMatrix, FieldCtx, default_ctx, field_mul,
                  field_new, field_pow, matrix_invert, rank_and_span)
from .relaxed import RelaxedReport, relaxed_check, relaxed_scan
from .vbf import (VBF, algebraic_degree, bf_eval, derivative_image, is_apn,
                  is_crooked, is_permutation)

__version__ = "0.1.0"
