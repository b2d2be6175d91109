"""End-to-end pipeline: ingest -> encode -> cluster -> per-cluster mining ->
reports, plus the brute-force verification mode.

Outputs are staged in a temporary directory and renamed into place, so a
failed run never leaves partial results. Every run re-checks its own
invariants (partition sums, witness validity, cluster-model consistency)
before anything is written; a violation aborts with an audit error.
"""

from __future__ import annotations

import hashlib
import io
import logging
import os
import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .cluster import ClusterModel, feature_vector, kmeans_fit, model_to_json, split_by_cluster
from .config import PipelineConfig
from .errors import AuditError, InputError
from .ingest import (
    Attribute,
    BugRecord,
    Codebook,
    build_codebooks_and_encode,
    codebooks_to_json,
    parse_csv,
)
from .mine import FrequentItemsetTable, apriori, to_transactions
from .oracle import enumerate_frequent_itemsets, essential_rules_naive, witness_is_valid
from .report import (
    ClusterReport,
    build_cluster_report,
    build_summary,
    write_cluster_text,
    write_figure_csvs,
    write_json,
    write_rules_csv,
)
from .rules import RulePartition, eliminate_redundant, generate_class_rules, top_assignees

logger = logging.getLogger("triage_miner")


@dataclass
class ClusterOutcome:
    """Everything mined from one cluster."""

    index: int
    records: list[BugRecord]
    table: FrequentItemsetTable
    top_codes: list[int]
    partition: RulePartition
    report: ClusterReport


@dataclass
class PipelineResult:
    config: PipelineConfig
    input_sha256: str
    codebooks: dict[Attribute, Codebook]
    records: list[BugRecord]
    model: ClusterModel
    outcomes: list[ClusterOutcome]

    @property
    def reports(self) -> list[ClusterReport]:
        return [outcome.report for outcome in self.outcomes]


def _load_and_encode(config: PipelineConfig):
    path = Path(config.input_path)
    try:
        payload = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read input {config.input_path!r}: {exc}") from exc
    input_sha256 = hashlib.sha256(payload).hexdigest()
    rows = parse_csv(io.BytesIO(payload), config.column_map)
    if not rows:
        raise InputError(f"input {config.input_path!r} contains no data rows")
    codebooks, records = build_codebooks_and_encode(rows)
    return input_sha256, codebooks, records


def _mine_cluster(
    index: int,
    records: list[BugRecord],
    config: PipelineConfig,
    codebooks: Mapping[Attribute, Codebook],
) -> ClusterOutcome:
    transactions = to_transactions(records)
    table = apriori(transactions, config.min_support_count)
    top_codes = top_assignees(records, config.top_n)
    rules = generate_class_rules(table, config.min_confidence, top_codes)
    partition = eliminate_redundant(rules)
    report = build_cluster_report(index, records, partition, codebooks, top_codes)
    logger.info(
        "cluster %d: %d records, %d frequent itemsets, %d rules (%d essential, %d redundant)",
        index,
        len(records),
        len(table),
        partition.rule_count,
        len(partition.essential),
        len(partition.redundant),
    )
    return ClusterOutcome(
        index=index,
        records=records,
        table=table,
        top_codes=top_codes,
        partition=partition,
        report=report,
    )


def execute(config: PipelineConfig) -> PipelineResult:
    """Run every stage in memory; no files are touched."""
    input_sha256, codebooks, records = _load_and_encode(config)
    logger.info("encoded %d records from %s", len(records), config.input_path)
    points = [feature_vector(record) for record in records]
    model = kmeans_fit(points, config.k, config.seed, config.max_iterations)
    logger.info(
        "k-means: k=%d, %d iterations, inertia %.4f", model.k, model.iterations_run, model.inertia
    )
    parts = split_by_cluster(records, model)
    with ThreadPoolExecutor(max_workers=config.effective_parallelism()) as pool:
        outcomes = list(
            pool.map(
                lambda pair: _mine_cluster(pair[0], pair[1], config, codebooks),
                enumerate(parts),
            )
        )
    result = PipelineResult(
        config=config,
        input_sha256=input_sha256,
        codebooks=codebooks,
        records=records,
        model=model,
        outcomes=outcomes,
    )
    violations = audit_result(result)
    if violations:
        raise AuditError(violations)
    return result


def audit_result(result: PipelineResult) -> list[str]:
    """Re-derive the pipeline's structural invariants from its own output."""
    problems: list[str] = []
    model, records = result.model, result.records

    sizes = model.cluster_sizes()
    if sum(sizes) != len(records):
        problems.append(f"cluster sizes sum to {sum(sizes)}, expected {len(records)}")
    if any(size == 0 for size in sizes):
        problems.append("model contains an empty cluster")
    if len(model.assignments) != len(records):
        problems.append("assignments do not cover the record list")

    points = np.asarray([feature_vector(record) for record in records], dtype=float)
    centroids = np.asarray(model.centroids, dtype=float)
    distances = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    nearest = distances.argmin(axis=1)
    if not np.array_equal(nearest, np.asarray(model.assignments)):
        problems.append("some record is not assigned to its nearest centroid")
    recomputed = float(distances[np.arange(len(points)), model.assignments].sum())
    if abs(model.inertia - recomputed) > 1e-9 * max(1.0, abs(recomputed)):
        problems.append(f"inertia {model.inertia} != recomputed {recomputed}")
    if any(later > earlier + 1e-9 for earlier, later in zip(model.inertia_history, model.inertia_history[1:])):
        problems.append("inertia increased between iterations")

    seen_ids = [record.bug_id for outcome in result.outcomes for record in outcome.records]
    if sorted(seen_ids) != sorted(record.bug_id for record in records):
        problems.append("cluster record lists are not a permutation of the input")

    for outcome in result.outcomes:
        label = f"cluster {outcome.index}"
        partition, report = outcome.partition, outcome.report
        if report.essential_count + report.redundant_count != partition.rule_count:
            problems.append(f"{label}: essential+redundant != rule count")
        if sum(report.length_histogram.values()) != partition.rule_count:
            problems.append(f"{label}: length histogram does not sum to the rule count")
        if report.size != len(outcome.records):
            problems.append(f"{label}: report size mismatch")
        essential_keys = {rule.key for rule in partition.essential}
        for rule in partition.all_rules():
            if rule.support_count < result.config.min_support_count:
                problems.append(f"{label}: rule below min support: {rule}")
            if rule.confidence < result.config.min_confidence:
                problems.append(f"{label}: rule below min confidence: {rule}")
            if not 1 <= len(rule.antecedent) <= 4:
                problems.append(f"{label}: antecedent size out of range: {rule}")
            if any(item.attribute == Attribute.ASSIGNEE for item in rule.antecedent):
                problems.append(f"{label}: assignee item in an antecedent: {rule}")
        for rule, witness in partition.redundant:
            if witness.key not in essential_keys:
                problems.append(f"{label}: witness is not essential: {witness}")
            if witness.consequent != rule.consequent:
                problems.append(f"{label}: witness consequent differs: {witness}")
            if not (
                len(witness.antecedent) < len(rule.antecedent)
                and witness.antecedent.issubset(rule.antecedent)
            ):
                problems.append(f"{label}: witness antecedent is not a strict subset: {witness}")
            if Fraction(witness.support_count, witness.antecedent_count) < Fraction(
                rule.support_count, rule.antecedent_count
            ):
                problems.append(f"{label}: witness confidence below the redundant rule: {witness}")
    return problems


def write_outputs(result: PipelineResult, dump_itemsets: bool = False) -> Path:
    """Write the full output tree atomically; returns the output directory."""
    final_dir = Path(result.config.output_dir)
    final_dir.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(
        tempfile.mkdtemp(prefix=final_dir.name + ".staging-", dir=final_dir.parent)
    )
    try:
        config_used = dict(result.config.analysis_parameters())
        config_used["input_sha256"] = result.input_sha256
        write_json(staging / "config_used.json", config_used)
        write_json(staging / "codebooks.json", codebooks_to_json(result.codebooks))
        write_json(staging / "clusters.json", model_to_json(result.model, result.records))

        report_dir = staging / "report"
        report_dir.mkdir()
        write_json(
            report_dir / "summary.json",
            build_summary(len(result.records), result.config.analysis_parameters(), result.reports),
        )
        for outcome in result.outcomes:
            write_cluster_text(report_dir / f"cluster_{outcome.index}.txt", outcome.report)
        write_figure_csvs(report_dir / "figures", result.reports)
        write_rules_csv(
            report_dir / "rules.csv",
            [outcome.partition for outcome in result.outcomes],
            result.codebooks,
        )
        if dump_itemsets:
            itemsets_dir = report_dir / "itemsets"
            itemsets_dir.mkdir()
            for outcome in result.outcomes:
                write_json(itemsets_dir / f"cluster_{outcome.index}.json", outcome.table.to_json())

        if final_dir.exists():
            shutil.rmtree(final_dir)
        os.replace(staging, final_dir)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    return final_dir


def run_pipeline(config: PipelineConfig, dump_itemsets: bool = False) -> PipelineResult:
    """Execute all stages, audit, and write the report directory."""
    result = execute(config)
    out = write_outputs(result, dump_itemsets=dump_itemsets)
    logger.info("report written to %s", out)
    return result


def run_verify(
    config: PipelineConfig,
    max_transactions: int = 2000,
    max_rules: int = 5000,
) -> tuple[bool, list[str]]:
    """Diff the fast mining paths against the brute-force oracles, cluster by
    cluster. Clusters above the size caps are skipped (reported as such)."""
    _, codebooks, records = _load_and_encode(config)
    points = [feature_vector(record) for record in records]
    model = kmeans_fit(points, config.k, config.seed, config.max_iterations)
    parts = split_by_cluster(records, model)

    ok = True
    lines: list[str] = []
    for index, cluster_records in enumerate(parts):
        transactions = to_transactions(cluster_records)
        if len(transactions) > max_transactions:
            lines.append(
                f"cluster {index}: skipped itemset check"
                f" ({len(transactions)} transactions > cap {max_transactions})"
            )
            continue
        table = apriori(transactions, config.min_support_count)
        reference = enumerate_frequent_itemsets(transactions, config.min_support_count)
        if dict(table.support) != reference:
            ok = False
            missing = set(reference) - set(table.support)
            extra = set(table.support) - set(reference)
            wrong = {
                s for s in set(reference) & set(table.support) if reference[s] != table.support[s]
            }
            lines.append(
                f"cluster {index}: FREQUENT-ITEMSET MISMATCH"
                f" (missing {len(missing)}, extra {len(extra)}, miscounted {len(wrong)})"
            )
            continue
        lines.append(f"cluster {index}: itemsets OK ({len(table)} frequent itemsets)")

        top_codes = top_assignees(cluster_records, config.top_n)
        rules = generate_class_rules(table, config.min_confidence, top_codes)
        if len(rules) > max_rules:
            lines.append(
                f"cluster {index}: skipped redundancy check"
                f" ({len(rules)} rules > cap {max_rules})"
            )
            continue
        partition = eliminate_redundant(rules)
        naive_keys = essential_rules_naive(rules)
        fast_keys = {rule.key for rule in partition.essential}
        if fast_keys != naive_keys:
            ok = False
            lines.append(
                f"cluster {index}: REDUNDANCY MISMATCH"
                f" (fast {len(fast_keys)} essential, oracle {len(naive_keys)})"
            )
            continue
        bad_witnesses = [
            rule for rule, witness in partition.redundant
            if not witness_is_valid(rule, witness, naive_keys)
        ]
        if bad_witnesses:
            ok = False
            lines.append(f"cluster {index}: {len(bad_witnesses)} INVALID WITNESSES")
        else:
            lines.append(
                f"cluster {index}: redundancy OK ({len(rules)} rules,"
                f" {len(partition.essential)} essential)"
            )
    return ok, lines
