"""Command line interface: tally, rank, axioms, gpmd, search, experiments, demos.

Reports are deterministic: identical inputs and flags produce byte-identical
output.  Floats render to 12 significant digits; exact rationals render as
fraction strings.  JSON payloads carry "schema": 1.

Exit codes: 2 malformed input (schema or usage), 3 disconnected comparison
graph, 4 axiom violation found by `axioms`, 5 exhaustive space too large.
"""
from __future__ import annotations

import csv as _csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import click

from . import __version__
from .axioms import (
    Assumption1,
    ExhaustiveComplete,
    ORDINAL_AXIOMS,
    PROBABILISTIC_AXIOMS,
    RandomComplete,
    RuleKind,
    check_pareto,
    counterexample_search,
    make_rule,
    run_check,
)
from .distributions import ResponseDistribution
from .errors import (
    DisconnectedGraphError,
    NotCompleteProfileError,
    PrefaxiomError,
    SchemaError,
    SpaceTooLargeError,
    ZeroProbabilityError,
)
from .gpmd import EpsilonPolicy, gpmd
from .profiles import (
    PreferenceProfile,
    Ranking,
    TiePolicy,
    complete_profile,
    generalized_profile,
    generate_complete,
    has_condorcet_cycle,
    is_transitive,
    majority_relation,
    parse_profile,
    serialize_profile,
    tally,
)
from .reward import (
    StatusKind,
    bt_embeddable,
    embedding_residual,
    rank_by_scores,
    scores as weight_scores,
    softmax,
    solve_mle,
    weights_copeland,
    weights_gpm,
    weights_standard,
)
from .rules import (
    TieBreak,
    borda_scores,
    condorcet_winner,
    copeland_scores,
    first_place_shares,
    ranking_from_scores,
)

EXIT_SCHEMA = 2
EXIT_DISCONNECTED = 3
EXIT_VIOLATION = 4
EXIT_SPACE = 5

RULE_CHOICES = ("borda", "copeland", "mle-standard", "mle-copeland", "mle-gpm", "gpmd-limit")
AXIOM_CHOICES = ORDINAL_AXIOMS + PROBABILISTIC_AXIOMS
DEMO_NAMES = ("condorcet-paradox", "single-voter-cycle", "borda-vs-copeland")


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _jnum(x: float) -> float:
    # round-trip through 12 significant digits so JSON numbers match the
    # textual renderings byte for byte
    return float(format(float(x), ".12g"))


def _frac(x) -> str:
    return str(Fraction(x))


def _round_floats(obj):
    """Round every float inside a JSON-ish structure to 12 significant digits."""
    if isinstance(obj, float):
        return _jnum(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _md_table(header: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |"]
    lines.append("|" + "|".join(" --- " for _ in header) + "|")
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return lines


def _emit(fmt: str, payload: dict, md_lines: list[str], csv_rows: list[list] | None = None):
    if fmt == "json":
        click.echo(json.dumps({"schema": 1, **payload}, indent=2))
    elif fmt == "csv":
        if csv_rows is None:
            raise click.UsageError("this command has no csv rendering")
        buf = io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerows(csv_rows)
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo("\n".join(md_lines))


def _read_profile(path: str) -> PreferenceProfile:
    try:
        with open(path, "rb") as handle:
            return parse_profile(handle.read())
    except FileNotFoundError:
        click.echo(f"error: no such file: {path}", err=True)
        sys.exit(EXIT_SCHEMA)
    except SchemaError as e:
        click.echo(f"schema error: {e}", err=True)
        sys.exit(EXIT_SCHEMA)


def _parse_epsilon(value: str) -> EpsilonPolicy:
    if value == "limit":
        return EpsilonPolicy.limit()
    try:
        return EpsilonPolicy.finite(Fraction(value))
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"--epsilon must be a number in (0, 1/2) or 'limit', got {value!r}")


def _tie_policy(value: str) -> TiePolicy:
    return TiePolicy.HALF_POINT if value == "half" else TiePolicy.STRICT_ONLY


FORMAT_OPTION = click.option(
    "--format",
    "fmt",
    type=click.Choice(["markdown", "json", "csv"]),
    default="markdown",
    show_default=True,
    help="Report format.",
)


@click.group()
@click.version_option(__version__, prog_name="prefaxiom")
def main():
    """Preference aggregation with mechanical axiom checking."""


@main.command("tally")
@click.argument("input", type=click.Path())
@FORMAT_OPTION
def cmd_tally(input: str, fmt: str):
    """Pairwise win counts and exact proportions of a profile."""
    profile = _read_profile(input)
    t = tally(profile)
    labels = profile.candidates.names
    n = t.n
    props = [["" if i == j or t.prop(i, j) is None else _frac(t.prop(i, j)) for j in range(n)] for i in range(n)]
    payload = {
        "command": "tally",
        "version": __version__,
        "candidates": list(labels),
        "wins": [list(row) for row in t.wins],
        "totals": [[t.total(i, j) if i != j else 0 for j in range(n)] for i in range(n)],
        "props": [[props[i][j] or None for j in range(n)] for i in range(n)],
    }
    md = [f"# Pairwise tally ({n} candidates, {profile.m} voters)", ""]
    md += _md_table(
        ["wins"] + list(labels),
        [[labels[i]] + [str(t.wins[i][j]) for j in range(n)] for i in range(n)],
    )
    md.append("")
    md += _md_table(
        ["prop"] + list(labels),
        [[labels[i]] + [props[i][j] or "-" for j in range(n)] for i in range(n)],
    )
    rows = [["winner", "loser", "wins", "losses", "prop"]]
    for i in range(n):
        for j in range(i + 1, n):
            rows.append([labels[i], labels[j], t.wins[i][j], t.wins[j][i], props[i][j] or ""])
    _emit(fmt, payload, md, rows)


def _ranking_payload(ranking: Ranking, labels) -> list[list[str]]:
    return [[labels[i] for i in cls] for cls in ranking.classes()]


def _ranking_text(ranking: Ranking, labels) -> str:
    parts = []
    for cls in ranking.classes():
        if len(cls) == 1:
            parts.append(labels[cls[0]])
        else:
            parts.append("(" + " = ".join(labels[i] for i in cls) + ")")
    return " > ".join(parts)


def _ranking_from_rewards(values: tuple[float, ...], tol: float = 1e-8) -> Ranking:
    by_value = sorted(range(len(values)), key=lambda i: (-values[i], i))
    classes: list[list[int]] = []
    for i in by_value:
        if classes and abs(values[classes[-1][-1]] - values[i]) <= tol:
            classes[-1].append(i)
        else:
            classes.append([i])
    # canonical member order inside a class keeps reports deterministic
    canon = tuple(tuple(sorted(c)) for c in classes)
    return Ranking(tuple(i for c in canon for i in c), canon)


@main.command("rank")
@click.argument("input", type=click.Path())
@click.option("--rule", type=click.Choice(RULE_CHOICES[:5]), required=True)
@click.option("--tie-policy", type=click.Choice(["half", "strict"]), default="half", show_default=True)
@click.option("--epsilon", default="0.001", show_default=True, help="Smoothing for mle-gpm: a number or 'limit'.")
@FORMAT_OPTION
def cmd_rank(input: str, rule: str, tie_policy: str, epsilon: str, fmt: str):
    """Aggregate ranking of a profile under one rule."""
    profile = _read_profile(input)
    policy = _tie_policy(tie_policy)
    labels = profile.candidates.names
    t = tally(profile)
    payload: dict = {"command": "rank", "version": __version__, "rule": rule}
    md = [f"# Ranking under {rule}", ""]
    notes: list[str] = []
    solver_block = None
    dist_block = None
    score_block = None

    try:
        if rule == "borda":
            sv = borda_scores(t)
            ranking = ranking_from_scores(sv)
            score_block = sv
        elif rule == "copeland":
            sv = copeland_scores(t, policy)
            ranking = ranking_from_scores(sv)
            score_block = sv
        else:
            if rule == "mle-standard":
                weights = weights_standard(t)
            elif rule == "mle-copeland":
                weights = weights_copeland(t, policy)
            else:
                eps_policy = _parse_epsilon(epsilon)
                target = gpmd(profile, eps_policy)
                weights = weights_gpm(target)
                payload["epsilon"] = epsilon
            solution = solve_mle(weights)
            if weights.is_constant_total:
                sv = weight_scores(weights)
                ranking = rank_by_scores(weights)
                score_block = sv
            else:
                notes.append("pair totals differ, score shortcut unavailable; ranking from solved rewards")
                ranking = _ranking_from_rewards(solution.r)
            solver_block = solution
            if solution.converged:
                dist_block = softmax(solution)
    except DisconnectedGraphError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_DISCONNECTED)
    except (NotCompleteProfileError, ZeroProbabilityError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)

    payload["ranking"] = _ranking_payload(ranking, labels)
    md.append(f"ranking: {_ranking_text(ranking, labels)}")
    if score_block is not None:
        payload["scores"] = {labels[i]: _frac(v) for i, v in enumerate(score_block.values)}
        md.append("")
        md += _md_table(
            ["candidate", "score"],
            [[labels[i], _frac(v)] for i, v in enumerate(score_block.values)],
        )
    if solver_block is not None:
        status = solver_block.status
        payload["solver"] = {
            "status": status.kind.value,
            "iterations": status.iterations,
            "grad_norm": _jnum(status.grad_norm),
            "rewards": [_jnum(x) for x in solver_block.r],
        }
        if status.kind is StatusKind.DIVERGED:
            payload["solver"]["drift_up"] = [labels[i] for i in status.drift_up]
            payload["solver"]["drift_down"] = [labels[i] for i in status.drift_down]
            md.append("")
            md.append(
                f"solver diverged: no finite optimum; drifting up {[labels[i] for i in status.drift_up]}, "
                f"down {[labels[i] for i in status.drift_down]}"
            )
        else:
            md.append("")
            md.append(f"solver {status.kind.value} in {status.iterations} iterations, grad norm {_fmt(status.grad_norm)}")
            md += ["", "rewards: " + ", ".join(f"{labels[i]}={_fmt(x)}" for i, x in enumerate(solver_block.r))]
    if dist_block is not None:
        payload["softmax"] = {labels[i]: _jnum(x) for i, x in enumerate(dist_block)}
        md.append("softmax: " + ", ".join(f"{labels[i]}={_fmt(x)}" for i, x in enumerate(dist_block)))
    for note in notes:
        payload.setdefault("notes", []).append(note)
        md += ["", f"note: {note}"]
    rows = [["class", "candidate"]]
    for k, cls in enumerate(ranking.classes()):
        for i in cls:
            rows.append([k + 1, labels[i]])
    _emit(fmt, payload, md, rows)


@main.command("axioms")
@click.argument("input", type=click.Path())
@click.option("--rule", type=click.Choice(RULE_CHOICES), required=True)
@click.option("--checks", default="all", show_default=True, help="'all' or comma-separated axiom names.")
@click.option("--tie-policy", type=click.Choice(["half", "strict"]), default="half", show_default=True)
@click.option("--epsilon", default="limit", show_default=True, help="Policy for the gpm check.")
@click.option("--tol", type=float, default=1e-6, show_default=True)
@FORMAT_OPTION
def cmd_axioms(input: str, rule: str, checks: str, tie_policy: str, epsilon: str, tol: float, fmt: str):
    """Run axiom checkers against one rule's output on a profile."""
    profile = _read_profile(input)
    policy = _tie_policy(tie_policy)
    eps_policy = _parse_epsilon(epsilon)

    has_ordinal = rule not in ("gpmd-limit",)
    has_prob = rule not in ("borda", "copeland")
    if checks == "all":
        selected = [a for a in ORDINAL_AXIOMS if has_ordinal] + [
            a for a in PROBABILISTIC_AXIOMS if has_prob
        ]
    else:
        selected = [c.strip() for c in checks.split(",") if c.strip()]
        for c in selected:
            if c not in AXIOM_CHOICES:
                raise click.UsageError(f"unknown axiom {c!r}")
            if c in ORDINAL_AXIOMS and not has_ordinal:
                raise click.UsageError(f"rule {rule!r} has no ordinal form for {c!r}")
            if c in PROBABILISTIC_AXIOMS and not has_prob:
                raise click.UsageError(f"rule {rule!r} has no probabilistic form for {c!r}")

    outputs = {}
    try:
        if any(a in ORDINAL_AXIOMS for a in selected):
            outputs[RuleKind.ORDINAL] = make_rule(rule, RuleKind.ORDINAL, tie_policy=policy)(profile)
        if any(a in PROBABILISTIC_AXIOMS for a in selected):
            outputs[RuleKind.PROBABILISTIC] = make_rule(rule, RuleKind.PROBABILISTIC, tie_policy=policy)(profile)
        reports = []
        for axiom in selected:
            output = outputs[RuleKind.ORDINAL if axiom in ORDINAL_AXIOMS else RuleKind.PROBABILISTIC]
            reports.append(run_check(axiom, profile, output, tol=tol, epsilon_policy=eps_policy))
    except DisconnectedGraphError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_DISCONNECTED)
    except (NotCompleteProfileError, ZeroProbabilityError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)

    payload = {
        "command": "axioms",
        "version": __version__,
        "rule": rule,
        "reports": [_round_floats(r.to_json_dict()) for r in reports],
        "violations": sum(1 for r in reports if r.violated),
    }
    md = [f"# Axiom checks for {rule}", ""]
    md += _md_table(
        ["axiom", "applicable", "satisfied", "witness"],
        [
            [r.axiom, str(r.applicable).lower(), str(r.satisfied).lower(),
             json.dumps(_round_floats(dict(r.witness))) if r.witness else "-"]
            for r in reports
        ],
    )
    rows = [["axiom", "applicable", "satisfied"]]
    rows += [[r.axiom, str(r.applicable).lower(), str(r.satisfied).lower()] for r in reports]
    _emit(fmt, payload, md, rows)
    if any(r.violated for r in reports):
        sys.exit(EXIT_VIOLATION)


@main.command("gpmd")
@click.argument("input", type=click.Path())
@click.option("--epsilon", default="0.001", show_default=True, help="A number in (0, 1/2) or 'limit'.")
@FORMAT_OPTION
def cmd_gpmd(input: str, epsilon: str, fmt: str):
    """Group preference matching distribution of a complete profile."""
    profile = _read_profile(input)
    eps_policy = _parse_epsilon(epsilon)
    try:
        dist = gpmd(profile, eps_policy)
    except NotCompleteProfileError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    labels = profile.candidates.names
    payload = {
        "command": "gpmd",
        "version": __version__,
        "epsilon": epsilon,
        "distribution": {labels[i]: _frac(x) for i, x in enumerate(dist)},
        "distribution_float": {labels[i]: _jnum(x) for i, x in enumerate(dist)},
    }
    md = [f"# Group preference matching distribution (epsilon = {epsilon})", ""]
    md += _md_table(
        ["candidate", "exact", "float"],
        [[labels[i], _frac(x), _fmt(x)] for i, x in enumerate(dist)],
    )
    rows = [["candidate", "exact", "float"]]
    rows += [[labels[i], _frac(x), _fmt(x)] for i, x in enumerate(dist)]
    _emit(fmt, payload, md, rows)


def _parse_space(text: str, seed: int | None):
    kind, _, rest = text.partition(":")
    params = {}
    for item in rest.split(","):
        if not item:
            continue
        key, _, value = item.partition("=")
        if not value:
            raise click.UsageError(f"bad space parameter {item!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise click.UsageError(f"space parameter {key!r} must be an integer")
    try:
        if kind == "exhaustive-complete":
            return ExhaustiveComplete(params.pop("n"), params.pop("m")), params
        if kind == "random-complete":
            if seed is None:
                raise click.UsageError("--seed is required for random spaces")
            return RandomComplete(params.pop("n"), params.pop("m"), params.pop("trials"), seed), params
        if kind == "assumption1":
            trials = params.pop("trials", None)
            if trials is not None and seed is None:
                raise click.UsageError("--seed is required for random spaces")
            return Assumption1(params.pop("n"), trials, seed), params
    except KeyError as e:
        raise click.UsageError(f"space {kind!r} needs parameter {e.args[0]!r}")
    raise click.UsageError(
        f"unknown space {kind!r}; expected exhaustive-complete, random-complete, or assumption1"
    )


@main.command("search")
@click.option("--rule", type=click.Choice(RULE_CHOICES), required=True)
@click.option("--axiom", type=click.Choice(AXIOM_CHOICES), required=True)
@click.option("--space", required=True, help="e.g. exhaustive-complete:n=3,m=3 or random-complete:n=3,m=4,trials=10000")
@click.option("--seed", type=int, default=None, help="Required for random spaces.")
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option("--epsilon", default="limit", show_default=True, help="Policy for the gpm check.")
@click.option("--budget", type=int, default=None, help="Cap on examined instances.")
@click.option("--jobs", type=int, default=1, envvar="PREFAXIOM_JOBS", show_default=True)
@click.option("--output", type=click.Path(), default=None, help="Write a found profile here.")
@FORMAT_OPTION
def cmd_search(rule, axiom, space, seed, tol, epsilon, budget, jobs, output, fmt):
    """Scan a profile space for the first axiom violation by a rule."""
    space_obj, extra = _parse_space(space, seed)
    if extra:
        raise click.UsageError(f"unknown space parameters {sorted(extra)}")
    kind = RuleKind.ORDINAL if axiom in ORDINAL_AXIOMS else RuleKind.PROBABILISTIC
    eps_policy = _parse_epsilon(epsilon)
    try:
        rule_obj = make_rule(rule, kind)
    except ValueError as e:
        raise click.UsageError(str(e))
    try:
        outcome = counterexample_search(
            rule_obj, axiom, space_obj, tol=tol, epsilon_policy=eps_policy, budget=budget, jobs=jobs
        )
    except SpaceTooLargeError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_SPACE)

    payload = {
        "command": "search",
        "version": __version__,
        "rule": rule,
        "axiom": axiom,
        "space": space,
        "seed": seed,
        "examined": outcome.examined,
        "found": outcome.found,
    }
    md = [f"# Search: {rule} vs {axiom} on {space}", ""]
    if outcome.found:
        doc = json.loads(serialize_profile(outcome.profile))
        payload["index"] = outcome.index
        payload["profile"] = doc
        payload["report"] = _round_floats(outcome.report.to_json_dict())
        md.append(f"violation found at index {outcome.index} after examining {outcome.examined} instances")
        md.append("")
        md.append("```json")
        md.append(json.dumps(doc, indent=2))
        md.append("```")
        md.append("")
        md.append(f"witness: {json.dumps(_round_floats(outcome.report.to_json_dict()['witness']))}")
        if output:
            with open(output, "wb") as handle:
                handle.write(serialize_profile(outcome.profile))
            md.append("")
            md.append(f"profile written to {output}")
    else:
        md.append(f"no violation; {outcome.examined} instances examined")
    rows = [["found", "index", "examined"]]
    rows.append([str(outcome.found).lower(), outcome.index if outcome.found else "", outcome.examined])
    _emit(fmt, payload, md, rows)


def _cycle_trials(n: int, m: int, trials: int, seed: int, jobs: int) -> int:
    def count_range(bounds: tuple[int, int]) -> int:
        lo, hi = bounds
        hits = 0
        for t in range(lo, hi):
            profile = generate_complete(n, m, seed * 1_000_003 + t)
            if condorcet_winner(tally(profile)) is None:
                hits += 1
        return hits

    if jobs <= 1:
        return count_range((0, trials))
    step = max(1, trials // (jobs * 8))
    ranges = [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(count_range, ranges))


@main.command("experiment-cycles")
@click.option("--n-list", default="3,10", show_default=True, help="Comma-separated candidate counts.")
@click.option("--m", type=int, default=3, show_default=True)
@click.option("--trials", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--jobs", type=int, default=1, envvar="PREFAXIOM_JOBS", show_default=True)
@FORMAT_OPTION
def cmd_experiment_cycles(n_list: str, m: int, trials: int, seed: int, jobs: int, fmt: str):
    """Frequency of profiles with no Condorcet winner, by candidate count."""
    try:
        ns = [int(x) for x in n_list.split(",") if x.strip()]
    except ValueError:
        raise click.UsageError("--n-list must be comma-separated integers")
    if not ns or any(n < 2 for n in ns):
        raise click.UsageError("--n-list needs integers >= 2")
    results = []
    for n in ns:
        hits = _cycle_trials(n, m, trials, seed, jobs)
        results.append({"n": n, "m": m, "trials": trials, "no_winner": hits,
                        "frequency": _jnum(hits / trials)})
    payload = {
        "command": "experiment-cycles",
        "version": __version__,
        "seed": seed,
        "rows": results,
    }
    md = [f"# No-Condorcet-winner frequency (m = {m}, {trials} trials, seed {seed})", ""]
    md += _md_table(
        ["n", "no winner", "frequency"],
        [[str(r["n"]), str(r["no_winner"]), _fmt(r["frequency"])] for r in results],
    )
    rows = [["n", "m", "trials", "no_winner", "frequency"]]
    rows += [[r["n"], r["m"], r["trials"], r["no_winner"], _fmt(r["frequency"])] for r in results]
    _emit(fmt, payload, md, rows)


def _paradox_profile() -> PreferenceProfile:
    return complete_profile(
        ["y1", "y2", "y3"],
        [["y1", "y2", "y3"], ["y2", "y3", "y1"], ["y3", "y1", "y2"]],
    )


def _demo_condorcet_paradox() -> tuple[dict, list[str]]:
    profile = _paradox_profile()
    t = tally(profile)
    labels = profile.candidates.names
    rel = majority_relation(t)
    cyclic, witness = has_condorcet_cycle(rel)
    borda = borda_scores(t)
    copeland = copeland_scores(t)
    solution = solve_mle(weights_standard(t))
    dist = softmax(solution)
    residual = embedding_residual(t)
    limit = gpmd(profile, EpsilonPolicy.limit())
    payload = {
        "profile": json.loads(serialize_profile(profile)),
        "props": [[None if t.prop(i, j) is None else _frac(t.prop(i, j)) for j in range(3)] for i in range(3)],
        "cycle": [labels[i] for i in witness],
        "borda": [_frac(v) for v in borda.values],
        "copeland": [_frac(v) for v in copeland.values],
        "mle_rewards": [_jnum(x) for x in solution.r],
        "softmax": [_jnum(x) for x in dist],
        "embedding_residual": _jnum(residual),
        "gpmd_limit": [_frac(x) for x in limit],
    }
    md = [
        "# The Condorcet paradox, end to end",
        "",
        "Three voters hold the three cyclic rotations of y1 > y2 > y3, so every",
        "pairwise proportion is 2/3 and the majority relation is a cycle:",
        "",
        f"majority cycle: {' -> '.join(labels[i] for i in witness)} -> {labels[witness[0]]}",
        "",
        f"Borda scores: {', '.join(_frac(v) for v in borda.values)} (three-way tie)",
        f"Copeland scores: {', '.join(_frac(v) for v in copeland.values)} (three-way tie)",
        "",
        "The pairwise-logistic MLE agrees with the tie: it converges to equal",
        f"rewards ({', '.join(_fmt(x) for x in solution.r)}) and the uniform softmax",
        f"({', '.join(_fmt(x) for x in dist)}).",
        "",
        "No Bradley-Terry model reproduces the cyclic proportions: the log-odds",
        f"around the cycle add up to {_fmt(residual)} (= 3 log 2) instead of 0,",
        "so the matching-distribution premise is not applicable here.",
        "",
        f"The group matching distribution is uniform: {[_frac(x) for x in limit]}.",
    ]
    return payload, md


def _demo_single_voter_cycle() -> tuple[dict, list[str]]:
    profile = generalized_profile(
        ["y1", "y2", "y3"],
        {"v1": [("y1", "y2"), ("y2", "y3"), ("y3", "y1")]},
    )
    t = tally(profile)
    labels = profile.candidates.names
    transitive = is_transitive(profile.voters[0].comparisons)
    solution = solve_mle(weights_standard(t))
    ranking = rank_by_scores(weights_standard(t))
    pareto = check_pareto(profile, ranking)
    payload = {
        "profile": json.loads(serialize_profile(profile)),
        "voter_transitive": transitive,
        "props": [[None if i == j or t.prop(i, j) is None else _frac(t.prop(i, j)) for j in range(3)] for i in range(3)],
        "mle_rewards": [_jnum(x) for x in solution.r],
        "ranking": _ranking_payload(ranking, labels),
        "pareto": _round_floats(pareto.to_json_dict()),
    }
    md = [
        "# One intransitive labeler defeats Pareto",
        "",
        "A single voter reports the cycle y1 > y2, y2 > y3, y3 > y1 (allowed for",
        f"comparison voters; is_transitive = {str(transitive).lower()}).  Every compared pair is",
        "unanimous at proportion 1, yet the pairs cannot all be separated:",
        "",
        f"MLE rewards: ({', '.join(_fmt(x) for x in solution.r)}) (all equal; the cycle is",
        "strongly connected, so the optimum is finite and symmetric)",
        f"ranking: {_ranking_text(ranking, labels)}",
        "",
        f"Pareto check: applicable = {str(pareto.applicable).lower()}, satisfied = {str(pareto.satisfied).lower()},",
        f"witness pair = {pareto.witness and [labels[i] for i in pareto.witness['pair']]}",
        "",
        "Unanimity on each pair forces strict separation, but the aggregate ties",
        "all three candidates: Pareto is applicable and violated.",
    ]
    return payload, md


def _demo_borda_vs_copeland() -> tuple[dict, list[str]]:
    rule = make_rule("borda", RuleKind.ORDINAL)
    outcome = counterexample_search(rule, "condorcet", ExhaustiveComplete(3, 3))
    profile = outcome.profile
    labels = profile.candidates.names
    t = tally(profile)
    winner = condorcet_winner(t)
    borda_ranking = ranking_from_scores(borda_scores(t))
    copeland_ranking = ranking_from_scores(copeland_scores(t))
    payload = {
        "profile": json.loads(serialize_profile(profile)),
        "search_index": outcome.index,
        "condorcet_winner": labels[winner],
        "borda_scores": [_frac(v) for v in borda_scores(t).values],
        "borda_ranking": _ranking_payload(borda_ranking, labels),
        "copeland_scores": [_frac(v) for v in copeland_scores(t).values],
        "copeland_ranking": _ranking_payload(copeland_ranking, labels),
        "witness": _round_floats(outcome.report.to_json_dict()["witness"]),
    }
    md = [
        "# Borda misses a Condorcet winner; Copeland does not",
        "",
        f"Exhaustive scan of all 3-voter, 3-candidate profiles stops at index {outcome.index}:",
        "",
        "```json",
        json.dumps(json.loads(serialize_profile(profile)), indent=2),
        "```",
        "",
        f"{labels[winner]} beats every rival by majority, but the Borda scores are",
        f"{', '.join(_frac(v) for v in borda_scores(t).values)}, ranking {_ranking_text(borda_ranking, labels)}:",
        f"the Condorcet winner is not the unique top.",
        "",
        f"Copeland scores {', '.join(_frac(v) for v in copeland_scores(t).values)} give {_ranking_text(copeland_ranking, labels)},",
        "with the Condorcet winner strictly first, as its majority-margin",
        "construction guarantees.",
    ]
    return payload, md


@main.command("demo")
@click.argument("name", type=click.Choice(DEMO_NAMES))
@FORMAT_OPTION
def cmd_demo(name: str, fmt: str):
    """Deterministic walkthroughs of the central phenomena."""
    builders = {
        "condorcet-paradox": _demo_condorcet_paradox,
        "single-voter-cycle": _demo_single_voter_cycle,
        "borda-vs-copeland": _demo_borda_vs_copeland,
    }
    payload, md = builders[name]()
    payload = {"command": "demo", "version": __version__, "name": name, **payload}
    rows = [["key", "value"]]
    rows += [[k, json.dumps(v)] for k, v in payload.items() if k not in ("command", "version")]
    _emit(fmt, payload, md, rows)


if __name__ == "__main__":
    main()
