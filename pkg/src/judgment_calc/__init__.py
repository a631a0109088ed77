"""Exact belief revision by judgment over finite propositional spaces."""

from .circumstance import (
    Circumstance,
    Tier,
    cond_prob,
    extend,
    from_dict,
    from_weights,
    judge,
    lift,
    marginalize,
    prob,
    to_dict,
    uniform,
)
from .errors import JudgmentError
from .evidence import EvidenceLedger, evidence, ledger_maybe_judge, ledger_observe, log_odds, mutual_evidence
from .implication import (
    CellTransport,
    ImplicationMode,
    apply_implication,
    construct_T,
    counterfactual_sufficient,
    counterfactual_T,
    judge_sufficient,
    judgment_atom,
    min_info_T,
    transport_for,
)
from .info import Bits, common_info, cond_info, decompose_common, independent_consequence, info, sign_pattern
from .props import Proposition, WorldSpace, build_space, entails, parse_formula
from .session import Session, load_session, save_session
