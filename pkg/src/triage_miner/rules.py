"""Class association rules: assignee consequents, confidence thresholds, and
elimination of redundant rules.

A rule is redundant when some essential rule with the same consequent, a
strictly smaller antecedent and confidence at least as high already carries
its meaning. Confidence comparisons between rules cross-multiply support
counts, so ties are decided exactly rather than in floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ConsistencyError, DuplicateRuleError, ParameterError
from .ingest import Attribute, BugRecord
from .mine import FrequentItemsetTable, Item, Itemset


@dataclass(frozen=True)
class Rule:
    """antecedent => consequent with exact support/antecedent counts.

    ``support_count`` counts transactions holding antecedent plus consequent;
    ``antecedent_count`` counts those holding the antecedent alone, so
    confidence is the exact ratio of the two.
    """

    antecedent: Itemset
    consequent: Item
    support_count: int
    antecedent_count: int

    @property
    def confidence(self) -> float:
        return self.support_count / self.antecedent_count

    @property
    def confidence_fraction(self) -> Fraction:
        return Fraction(self.support_count, self.antecedent_count)

    @property
    def key(self) -> tuple:
        """Identity: antecedent plus consequent."""
        return (self.antecedent.items, self.consequent)

    def sort_key(self) -> tuple:
        """Deterministic ordering: size asc, confidence desc, support desc,
        canonical antecedent, consequent code."""
        return (
            len(self.antecedent),
            -self.confidence_fraction,
            -self.support_count,
            self.antecedent.items,
            self.consequent.code,
        )


@dataclass(frozen=True)
class RulePartition:
    """Disjoint split of a rule set into essential rules and redundant rules,
    each redundant rule paired with the essential witness that subsumes it."""

    essential: tuple[Rule, ...]
    redundant: tuple[tuple[Rule, Rule], ...]

    @property
    def rule_count(self) -> int:
        return len(self.essential) + len(self.redundant)

    def all_rules(self) -> list[Rule]:
        return list(self.essential) + [rule for rule, _ in self.redundant]


def top_assignees(records: Sequence[BugRecord], n: int) -> list[int]:
    """The n assignee codes with the most bugs, count desc then code asc."""
    if not records:
        raise ParameterError("top_assignees requires at least one record")
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    counts = Counter(record.assignee_code for record in records)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [code for code, _ in ranked[:n]]


def generate_class_rules(
    table: FrequentItemsetTable,
    min_confidence: float,
    allowed_consequents: Iterable[int],
) -> list[Rule]:
    """All rules A => assignee with A non-empty, A u {assignee} frequent and
    confidence >= min_confidence, for the allowed assignee codes only.

    Support counts come straight from the table; the antecedent's own count
    must be present too (downward closure), otherwise the table is corrupt.
    """
    allowed = set(allowed_consequents)
    if not allowed:
        raise ParameterError("allowed_consequents must be non-empty")

    rules = []
    for itemset in table.itemsets():
        if len(itemset) < 2:
            continue
        assignee_items = [i for i in itemset if i.attribute == Attribute.ASSIGNEE]
        if len(assignee_items) != 1 or assignee_items[0].code not in allowed:
            continue
        consequent = assignee_items[0]
        antecedent = itemset.without(consequent)
        if antecedent not in table:
            raise ConsistencyError(
                f"frequent-itemset table lacks antecedent {antecedent} of {itemset}"
            )
        rule = Rule(
            antecedent=antecedent,
            consequent=consequent,
            support_count=table[itemset],
            antecedent_count=table[antecedent],
        )
        if rule.confidence >= min_confidence:
            rules.append(rule)
    rules.sort(key=Rule.sort_key)
    return rules


def _subsumes(witness: Rule, rule: Rule) -> bool:
    """Same consequent, strictly smaller antecedent, confidence no lower
    (exact rational comparison)."""
    return (
        witness.consequent == rule.consequent
        and len(witness.antecedent) < len(rule.antecedent)
        and witness.antecedent.issubset(rule.antecedent)
        and witness.support_count * rule.antecedent_count
        >= rule.support_count * witness.antecedent_count
    )


def eliminate_redundant(rules: Sequence[Rule]) -> RulePartition:
    """Partition rules into essential and redundant sets.

    Rules are scanned in ascending antecedent-size order, so every witness is
    already known to be essential when a larger rule is tested against it.
    The recorded witness is the qualifying essential rule with the smallest
    antecedent, then the highest confidence, then canonical order.
    """
    seen: set[tuple] = set()
    for rule in rules:
        if rule.key in seen:
            raise DuplicateRuleError(f"duplicate rule: {rule.antecedent} => {rule.consequent}")
        seen.add(rule.key)

    essential: list[Rule] = []
    redundant: list[tuple[Rule, Rule]] = []
    # essential rules indexed by (antecedent items, consequent) for subset probes
    by_key: dict[tuple, Rule] = {}
    for rule in sorted(rules, key=Rule.sort_key):
        witnesses = []
        for size in range(1, len(rule.antecedent)):
            for subset in combinations(rule.antecedent.items, size):
                candidate = by_key.get((subset, rule.consequent))
                if candidate is not None and _subsumes(candidate, rule):
                    witnesses.append(candidate)
        if witnesses:
            witness = min(
                witnesses,
                key=lambda w: (len(w.antecedent), -w.confidence_fraction, w.antecedent.items),
            )
            redundant.append((rule, witness))
        else:
            essential.append(rule)
            by_key[(rule.antecedent.items, rule.consequent)] = rule

    redundant.sort(key=lambda pair: pair[0].sort_key())
    return RulePartition(essential=tuple(essential), redundant=tuple(redundant))
