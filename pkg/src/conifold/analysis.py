"""Run orchestration behind the command line: enumerate, analyze, verify-lemma.

Every function here returns plain JSON-ready data (no floats) plus an exit
code: 0 success, 1 a mathematical property failed, 2 invalid input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from conifold import __version__
from conifold.config import ConfigMatrix, enumerate_configs, topology_report, validate
from conifold.curves import AttemptsExhausted, curve_kinds, verify_normal_bundle
from conifold.exact import DEFAULT_PRIME, PrimeField
from conifold.graded import (
    block_shape,
    generic_profile_value,
    hilbert_profile,
    is_generic_profile,
    random_spec,
    sample_lemma_degrees,
)
from conifold.incidence import check_all_pairs, dim_section_space
from conifold.multiring import AmbientSpace
from conifold.rng import ALGORITHM, Stream

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT = 0, 1, 2


@dataclass
class RunManifest:
    command: str
    ambient: AmbientSpace | None = None
    configs: list[ConfigMatrix] = dc_field(default_factory=list)
    prime: int = DEFAULT_PRIME
    seed: int = 0
    window: tuple[int, int] | None = None
    attempts: int = 5
    trials: int = 1000
    m_max: int = 4
    degree_bound: int = 6
    max_source: int | None = None
    oracle: bool = True

    def echo(self) -> dict:
        return {
            "command": self.command,
            "prime": self.prime,
            "seed": self.seed,
            "window": list(self.window) if self.window else None,
            "attempts": self.attempts,
            "rng": ALGORITHM,
            "version": __version__,
        }


def _config_key(cfg: ConfigMatrix) -> str:
    return json.dumps(cfg.to_json(), sort_keys=True, separators=(",", ":"))


def cmd_enumerate(ambient: AmbientSpace) -> tuple[list[dict], int]:
    out = []
    for cfg in enumerate_configs(ambient):
        topo = topology_report(cfg)
        out.append(
            {
                "config": cfg.to_json(),
                "dim_MY": dim_section_space(cfg),
                "topology": topo.to_json(),
            }
        )
    return out, EXIT_OK


def analyze_config(cfg: ConfigMatrix, manifest: RunManifest) -> tuple[dict, int]:
    """Validation, topology, the k + 1 normal-bundle checks and disjointness."""
    report: dict = {"config": cfg.to_json(), "run": manifest.echo()}
    problems = validate(cfg, strict=True)
    report["validation"] = {"valid": not problems, "violations": problems}
    if problems:
        report.update(topology=None, curves=[], disjointness=[], certified=False)
        report["verdict"] = "invalid input: " + "; ".join(problems)
        return report, EXIT_INPUT

    field = PrimeField(manifest.prime)
    topo = topology_report(cfg)
    report["topology"] = topo.to_json()

    root = Stream(manifest.seed, "curve", _config_key(cfg))
    verdicts = []
    for kind in curve_kinds(cfg.k):
        try:
            v = verify_normal_bundle(
                cfg, kind, root.child(kind), manifest.attempts, field, manifest.window
            )
        except AttemptsExhausted as exc:
            v = exc.verdict
        verdicts.append(v)
    report["curves"] = [v.to_json() for v in verdicts]

    pairs = check_all_pairs(cfg, oracle=manifest.oracle)
    report["disjointness"] = [p.to_json() for p in pairs]

    failures = [f"{v.kind}: {v.error or 'splitting ' + str(v.splitting)}" for v in verdicts if not v.passed]
    failures += [
        f"{p.kind1}/{p.kind2}: inequality fails (margin {p.margin})"
        for p in pairs
        if p.covered and not p.holds
    ]
    failures += [
        f"{p.kind1}/{p.kind2}: oracle {p.fiber_codim_oracle} != closed form {p.fiber_codim_closed}"
        for p in pairs
        if p.covered and p.fiber_codim_oracle is not None and p.fiber_codim_oracle != p.fiber_codim_closed
    ]
    uncovered = [p for p in pairs if not p.covered]
    report["certified"] = not failures
    if failures:
        report["verdict"] = "not certified: " + "; ".join(failures)
        return report, EXIT_PROPERTY
    verdict = f"conifold transition to #_{topo.summands}(S³×S³) certified (generic witnesses)"
    if uncovered:
        verdict += "; equal-degree pair not covered by the disjointness count"
    report["verdict"] = verdict
    return report, EXIT_OK


def cmd_analyze(manifest: RunManifest) -> tuple[list[dict], int]:
    reports, code = [], EXIT_OK
    for cfg in manifest.configs:
        rep, c = analyze_config(cfg, manifest)
        reports.append(rep)
        code = max(code, c)
    return reports, code


def lemma_trial(seed: int, index: int, field: PrimeField, m_max: int, degree_bound: int,
                window=None, max_source: int | None = None):
    """One reproducible trial: random degree data and coefficients for stream ``(seed, 'lemma', index)``."""
    rng = Stream(seed, "lemma", index)
    tgt, src = sample_lemma_degrees(rng, m_max, degree_bound, max_source)
    spec = random_spec(tgt, src, field, rng)
    return spec, hilbert_profile(spec, window)


def _rank_drop_evidence(spec, profile) -> list[dict]:
    out = []
    for l, dim in sorted(profile.dims.items()):
        if dim == generic_profile_value(l):
            continue
        rows, cols = block_shape(spec, l)
        out.append(
            {
                "l": l,
                "rows": rows,
                "cols": cols,
                "rank": cols - dim,
                "generic_rank": cols - generic_profile_value(l),
            }
        )
    return out


def cmd_verify_lemma(manifest: RunManifest) -> tuple[dict, int]:
    if manifest.trials < 1 or manifest.m_max < 1 or manifest.degree_bound < 1:
        return {"error": "trials, m and degree bound must all be at least 1"}, EXIT_INPUT
    if manifest.max_source is not None and manifest.max_source < 1:
        return {"error": "a source-degree cap must be at least 1"}, EXIT_INPUT
    field = PrimeField(manifest.prime)
    args = (field, manifest.m_max, manifest.degree_bound, manifest.window, manifest.max_source)
    failures = []
    by_source: dict[str, list[int]] = {}
    for t in range(manifest.trials):
        spec, profile = lemma_trial(manifest.seed, t, *args)
        tally = by_source.setdefault(str(max(spec.source_degrees)), [0, 0])
        tally[0] += 1
        if not is_generic_profile(profile):
            tally[1] += 1
            # replay from the logged stream to confirm the drop is reproducible
            spec2, profile2 = lemma_trial(manifest.seed, t, *args)
            failures.append(
                {
                    "trial": t,
                    "stream": [manifest.seed, "lemma", t],
                    "target_degrees": list(spec.target_degrees),
                    "source_degrees": list(spec.source_degrees),
                    "profile": profile.to_json(),
                    "replayed_identically": profile2.dims == profile.dims
                    and spec2.to_json() == spec.to_json(),
                    "rank_drops": _rank_drop_evidence(spec, profile),
                }
            )
    passed = manifest.trials - len(failures)
    ok = len(failures) * 10000 <= manifest.trials
    frac = Fraction(passed, manifest.trials)
    stats = {
        "run": manifest.echo(),
        "m_max": manifest.m_max,
        "degree_bound": manifest.degree_bound,
        "max_source_degree": manifest.max_source,
        "trials_and_failures_by_largest_source_degree": by_source,
        "trials": manifest.trials,
        "passed": passed,
        "pass_fraction": f"{frac.numerator}/{frac.denominator}",
        "threshold": "9999/10000",
        "meets_threshold": ok,
        "failures": failures,
    }
    return stats, EXIT_OK if ok else EXIT_PROPERTY


# ----------------------------------------------------------------- rendering


def to_json_text(data) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _md_profile(profile) -> str:
    if not profile:
        return "-"
    return ", ".join(f"{l}:{d}" for l, d in profile)


def render_analysis_md(reports: list[dict]) -> str:
    lines = []
    for rep in reports:
        cfg = rep["config"]
        lines.append(f"## ambient {cfg['ambient']}, D = {cfg['D']}")
        lines.append("")
        if not rep["validation"]["valid"]:
            lines.append("Invalid configuration:")
            lines.extend(f"- {v}" for v in rep["validation"]["violations"])
            lines.append("")
            continue
        t = rep["topology"]
        lines.append("| euler | b2 | b3 | nodes | summands |")
        lines.append("|---|---|---|---|---|")
        lines.append(f"| {t['euler']} | {t['b2']} | {t['b3']} | {t['nodes']} | {t['summands']} |")
        lines.append("")
        lines.append("| curve | degree | attempts | smooth | profile (l:dim) | splitting | pass |")
        lines.append("|---|---|---|---|---|---|---|")
        for c in rep["curves"]:
            lines.append(
                f"| {c['curve_kind']} | {tuple(c['multidegree'])} | {c['attempts']} | {c['smooth_along_curve']} "
                f"| {_md_profile(c['hilbert_profile'])} | {c['splitting_type']} | {c['passed']} |"
            )
        lines.append("")
        lines.append("| pair | pair dim - 6 | codim (closed) | codim (oracle) | margin | holds |")
        lines.append("|---|---|---|---|---|---|")
        for p in rep["disjointness"]:
            if not p["covered"]:
                lines.append(f"| {p['kind1']}/{p['kind2']} | - | - | - | - | {p['note']} |")
                continue
            lines.append(
                f"| {p['kind1']}/{p['kind2']} | {p['dim_pair_space'] - p['reparam_correction']} "
                f"| {p['fiber_codim_closed']} | {p['fiber_codim_oracle']} | {p['margin']} | {p['holds']} |"
            )
        lines.append("")
        lines.append(f"**{rep['verdict']}**")
        lines.append("")
    return "\n".join(lines)


def render_enumerate_md(rows: list[dict]) -> str:
    lines = ["| D | dim M_Y | euler | b3 | summands |", "|---|---|---|---|---|"]
    for r in rows:
        t = r["topology"]
        lines.append(f"| {r['config']['D']} | {r['dim_MY']} | {t['euler']} | {t['b3']} | {t['summands']} |")
    return "\n".join(lines) + "\n"


def render_lemma_md(stats: dict) -> str:
    lines = [
        f"trials: {stats['trials']}, passed: {stats['passed']} ({stats['pass_fraction']}), "
        f"threshold {stats['threshold']}: {'met' if stats['meets_threshold'] else 'NOT met'}",
    ]
    for f in stats["failures"]:
        lines.append(f"- trial {f['trial']} degrees {f['target_degrees']} <- {f['source_degrees']}: {f['rank_drops']}")
    return "\n".join(lines) + "\n"
