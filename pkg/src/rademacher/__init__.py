"""Exact Rademacher symbols, Dedekind sums and linking numbers on the
triangle groups Gamma_{p,q}, with three independent computation routes and
an exhaustive verification harness."""

__version__ = "0.1.0"

from .cyclotomic import (AlgebraicReal, ContextMismatchError, CyclotomicContext,
                         NotRealError, compare, cyclotomic_polynomial,
                         euler_phi, make_context, sign_of)
from .triangle import (ChebyshevTable, GroupMatrix, generator_S, generator_U,
                       identity, is_trace_greater_than_two, mul, power_S,
                       power_U, sgn, trace_sign)
from .words import (CyclicKey, NotCyclicallyAlternating, Syllable, Word,
                    WordNotFoundError, WordSyntaxError, cyclic_key,
                    enumerate_words, matrix_to_word, normalize, parse_word,
                    word_to_matrix)
from .cocycle import BranchBoundaryError, asai_w, asai_w_from_log
from .symbols import (NonIntegralSymbolError, SymbolReport, compute_report,
                      dedekind_phi, dedekind_sum, dehornoy_linking, psi,
                      rademacher_classical, rademacher_formula,
                      rademacher_symbol)
from .verify import SuiteResult, run_suites
