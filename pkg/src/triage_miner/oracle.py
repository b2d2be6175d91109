"""Brute-force reference implementations used to cross-check the fast paths.

These deliberately avoid the algorithms they validate: frequent itemsets are
tallied by enumerating every subset of every transaction, and redundancy is
decided by a declarative recursion over all rules rather than the level-wise
sweep. Quadratic or exponential cost is fine at verification scale.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Sequence

from .mine import Itemset, Transaction
from .rules import Rule


def enumerate_frequent_itemsets(
    transactions: Sequence[Transaction],
    min_support_count: int,
    max_size: int = 5,
) -> dict[Itemset, int]:
    """Exact frequent-itemset counts by tallying every subset of every
    transaction (any itemset with positive support shows up this way)."""
    counts: Counter[Itemset] = Counter()
    for transaction in transactions:
        items = transaction.itemset.items
        for size in range(1, min(max_size, len(items)) + 1):
            for combo in combinations(items, size):
                counts[Itemset(combo)] += 1
    return {
        itemset: count for itemset, count in counts.items() if count >= min_support_count
    }


def _naive_subsumes(witness: Rule, rule: Rule) -> bool:
    # deliberately restated, not shared with the fast path: set containment
    # plus Fraction comparison instead of cross-multiplied counts
    return (
        witness.consequent == rule.consequent
        and set(witness.antecedent.items) < set(rule.antecedent.items)
        and witness.confidence_fraction >= rule.confidence_fraction
    )


def essential_rules_naive(rules: Sequence[Rule]) -> set[tuple]:
    """Keys of the essential rules as the fixpoint of all-pairs subsumption.

    A rule is essential iff no essential rule subsumes it; the recursion is
    well-founded because subsumption strictly shrinks the antecedent.
    """
    cache: dict[tuple, bool] = {}

    def essential(rule: Rule) -> bool:
        if rule.key not in cache:
            cache[rule.key] = not any(
                _naive_subsumes(other, rule) and essential(other)
                for other in rules
                if other.key != rule.key
            )
        return cache[rule.key]

    return {rule.key for rule in rules if essential(rule)}


def witness_is_valid(rule: Rule, witness: Rule, essential_keys: set[tuple]) -> bool:
    """Re-check a recorded witness from first principles: essential, same
    consequent, strict-subset antecedent, confidence no lower (exact)."""
    return (
        witness.key in essential_keys
        and witness.consequent == rule.consequent
        and len(witness.antecedent) < len(rule.antecedent)
        and set(witness.antecedent.items) < set(rule.antecedent.items)
        and witness.confidence_fraction >= rule.confidence_fraction
    )
