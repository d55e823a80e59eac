"""公式语法层统一入口"""

from .formula import (
    BOT, TOP, And, Bot, Down, Formula, Imp, Not, Or, Top, Up, Var, from_dict, iff,
)
from .parser import MAX_DEPTH, parse, render, tokenize
from .closure import (
    ClosureBasis, closure_basis, in_sigma, normalize, sigma_members, star, star_case, subformulas,
)
from .schemes import NON_THEOREMS, agreement_corpus, scheme_instances
