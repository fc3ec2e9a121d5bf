"""Default logic extensions, sequential thresholding and possible-world
partition sequences over a finite propositional signature."""

from .defaults import (
    DefaultRule,
    DefaultTheory,
    Extension,
    RuleKind,
    enumerate_extensions,
    gamma_fixpoint,
    generating_orderings,
    is_extension,
    normal_default,
)
from .errors import (
    CapExceededError,
    NmrError,
    NonNormalError,
    ParseError,
    SignatureError,
    TheoryError,
    UnknownAtomError,
    UnrankableError,
    WeightError,
    ZeroMassError,
)
from .files import load_theory, load_weights, parse_theory, parse_weights
from .logic import (
    Atom,
    Formula,
    Signature,
    World,
    entails,
    evaluate,
    models_of,
    parse_formula,
    pretty,
)
from .partition import (
    NmRule,
    PartitionSequence,
    default_rules_of,
    enumerate_partition_sequences,
    final_theory,
    run_partition,
    threshold_rules_of,
)
from .ranking import RankedExtension, epsilon_min, rank_extensions
from .threshold import (
    FilteredSequence,
    ThresholdCollection,
    ThresholdParams,
    enumerate_filtered_sequences,
    step_probability,
    threshold_probability,
)
from .weights import WorldModel, build_model, conditional_probability, mass, proportion

__version__ = "0.1.0"
