"""SL2(C) character schemes of small Seifert manifolds S^2(a1/b1, a2/b2, a3/b3)."""
from .analysis import SchemeReport, TangentReport, multiplicity_verdict, order2_obstruction, scheme_report, tangent_space
from .characters import CharacterPoint, HomologyData, census, enumerate_abelian, enumerate_irreducible, homology
from .cheby import cheb_S, cheb_T, cheb_special_values
from .cyclo import CycloMatrix, CycloNumber, cyclo_kernel, cyclo_rank, cyclo_solve
from .groebner import GroebnerBasis, groebner_compute, normal_form, quotient_dimension
from .poly import Poly, parse_poly
from .presentation import IdealPresentation, SeifertParams, build_ideal, params_normalize, parse_seifert
from .trace import GroupWord, trace_reduce, word_reduce

__all__ = [
    "CharacterPoint",
    "CycloMatrix",
    "CycloNumber",
    "GroebnerBasis",
    "GroupWord",
    "HomologyData",
    "IdealPresentation",
    "Poly",
    "SchemeReport",
    "SeifertParams",
    "TangentReport",
    "build_ideal",
    "census",
    "cheb_S",
    "cheb_T",
    "cheb_special_values",
    "cyclo_kernel",
    "cyclo_rank",
    "cyclo_solve",
    "enumerate_abelian",
    "enumerate_irreducible",
    "groebner_compute",
    "homology",
    "multiplicity_verdict",
    "normal_form",
    "order2_obstruction",
    "params_normalize",
    "parse_poly",
    "parse_seifert",
    "quotient_dimension",
    "scheme_report",
    "tangent_space",
    "trace_reduce",
    "word_reduce",
]
