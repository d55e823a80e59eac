"""搜索层统一入口"""

from .enumerate import enumerate_frames, enumerate_preorders, star_closed_relations
from .generators import RandomModelParams, random_formula, random_model
from .service import (
    BudgetExhausted, Certificate, CountermodelFound, Decision, NoCountermodelUpTo, SearchBudget,
    SearchOutcome, SearchStats, decide_bounded, find_countermodel,
)
