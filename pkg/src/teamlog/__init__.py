"""Finite-model checking and entailment for doxastic team semantics."""

from .entailment import (
    BatchResult, Engine, EntailmentResult, Theory, bel, entails, entails_batch, equivalent,
)
from .errors import (
    ArityError, ModelError, ParseError, ScopeError, SpaceTooLarge, TeamlogError, UnknownSymbol,
)
from .evaluator import (
    Evaluator, Query, Verdict, eval_adjoint_imp, eval_atom, eval_belief, eval_classical,
    eval_min_conn, eval_possible, eval_quantifier, eval_update_conn, evaluate,
)
from .fo_eval import eval_term, tarski_sat
from .model import (
    DEFAULT_CAP, Assignment, Structure, Team, TeamSpace, ValidationReport, blanket_expand,
    enumerate_assignments, enumerate_teams, load_structure, load_team, restrict_team,
    structure_to_json, team_to_json, validate_structure, x_variants,
)
from .syntax import Quantifier, UpdateKind, free_variables, parse, parse_fo, to_str
from .updates import (
    BUILTINS, SYMMETRIC_DIFFERENCE, Law, LawReport, UpdateOp, apply_update, check_laws,
    derived_operator, leq, minimal_apply, minimal_apply_explicit, operator,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
