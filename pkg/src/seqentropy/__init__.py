"""Local and information entropy of individual symbol sequences."""

from .entropy_core import (
    MassDistribution,
    entropy_difference_bound,
    entropy_max_bound,
    point_entropy,
    shannon_entropy,
)
from .words import (
    SymbolSequence,
    WordCountTable,
    count_words,
    distinct_count,
    occurrences,
    ones_count,
    read_sequence,
    word_distribution,
    write_sequence,
    zero_word_frequency,
)
from .estimators import (
    EntropyEstimate,
    EntropyProfile,
    entropy_profile,
    estimate_h_info,
    estimate_h_loc,
    series_scheme_profile,
)
from .generators import (
    BernoulliSpec,
    RandomSource,
    bernoulli_realization,
    champernowne_binary,
    cramer_spec,
    markov_sequence,
    periodic_sequence,
    prime_indicator,
    quadratic_residue_word,
)
from .combinatorics import AvoidanceCounter, avoid_count, growth_rate, tuple_count
from .theory_checks import CheckReport

__version__ = "0.1.0"
