"""Finite bidirectional transformations: pure, monadic and symmetric lenses,
spans of lenses and their equivalences, checked exhaustively."""
from .carrier import (BOOL, EMPTY, UNIT, FiniteCarrier, Just, carrier, int_range, maybe_lift,
                      product, render, sized)
from .effects import (IDENTITY, LIST, MAYBE, STATE_BOOL, Commutativity, Effect, EffectValue,
                      Identity, ListEffect, Maybe, Monoid, State, Writer, bind, check_commutative,
                      check_membership_laws, check_monad_laws, effect_eq, finite_monoid, free_list,
                      member, multiset, outcomes, ret, xor_bool)
from .equivalence import (BACKWARD, FORWARD, BisimWitness, IsoWitness, SpanEquivWitness,
                          SpanWitness, bisim_from_span_witness, check_base_map,
                          normalize_equiv_chain, search_equivalence, span_witness_from_bisim,
                          verify_equivalence, verify_span_witness)
from .errors import (BoundExceeded, BxError, CarrierMismatch, ConsistencyViolation,
                     EffectMismatch, EmptyStateWithNonemptyViews, InvalidChain, InvalidWitness,
                     NonPureInput, NotFound, OutOfCarrier, UnsupportedMembership)
from .lens_core import (PureLens, check_pure_laws, compose_pure, enumerate_pure_lenses,
                        from_tables, fst_lens, id_lens, pure_equal, snd_lens)
from .mlens import (MLens, NaiveMLens, PutLens, abs_lens, check_mlens_laws, check_naive_laws,
                    check_put_lens_laws, compose_m, compose_naive, const_mlens,
                    enumerate_mlenses, id_mlens, lens2mlens, log_lens, mlens2lens, mlens_equal,
                    mlens_from_tables, naive_from_tables, put_lens_of, random_mlens,
                    search_naive_counterexample)
from .report import LawReport, Violation
from .spans import (Span, check_span_wb, compose_span, consistent_pairs, consistent_triples,
                    extend_left, extend_right, identity_span, join, pure_span, smlens2span,
                    span2smlens)
from .symmetric import (SLens, SMLens, check_symmetric_laws, compose_s, compose_sm, fail_smlens,
                        id_slens, set_bool, slens_from_tables, slens_to_smlens,
                        smlens_from_tables, smlens_to_slens)

__version__ = "0.1.0"
