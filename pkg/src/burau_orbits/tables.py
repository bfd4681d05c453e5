"""Expectation data for genus-zero subgroups, table verification and the negative sweep.

Three tab-separated files live in ``data/``: ``table1.tsv`` (one line per
subgroup with its realizing input), ``realizations.tsv`` (orbit-level claims
about named inputs) and ``negatives.tsv`` (inputs without genus-zero orbits).
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .classifier import Classification, classify_module, classify_ring
from .congruence import coset_gamma_set, has_level_dividing, parse_congruence_text
from .finite_module import FiniteModule, module_from_ring, module_iso
from .finite_ring import Ring
from .gamma_set import iso_gamma_sets, signature
from .laurent_burau import LaurentPoly, special_element
from .spec_text import _Parser, parse_input, parse_laurent

# -- loading -------------------------------------------------------------------------------------


def read_tsv(name):
    text = resources.files("burau_orbits").joinpath("data").joinpath(name).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    return list(csv.DictReader(lines, delimiter="\t"))


def eval_int(expr: str, **env) -> int:
    """Value of an integer expression in one variable (``-5*k-1``)."""
    (var, val), = env.items()
    ps = _Parser(expr.replace(var, "l"))
    poly = ps.expr()
    if ps.i != len(ps.chars):
        raise ValueError(f"bad expression {expr!r}")
    return sum(c * val ** e for e, c in poly.items())


def expand_param(param: str):
    """``[{}]`` for ``-``; else one substitution dict per value of ``k``."""
    if param.strip() in ("", "-"):
        return [{}]
    parts = dict(item.split("=", 1) for item in param.split(";"))
    ks = [int(x) for x in parts.pop("k").split(",")]
    out = []
    for k in ks:
        sub = {"k": k}
        for key, expr in parts.items():
            sub[key] = eval_int(expr, k=k)
        out.append(sub)
    return out


def substitute(text, sub):
    for key, val in sub.items():
        text = text.replace("{" + key + "}", str(val))
    return text


def build_input(text):
    kind, _, body = text.partition(":")
    return parse_input(kind, body)


def param_text(sub):
    return None if "a" not in sub else f"a={sub['a']}"


@dataclass(frozen=True)
class TableRow:
    name: str
    family: str
    p: int
    module: str
    congruence: str
    depth: int
    input: str
    selector: str
    param: str


@lru_cache(maxsize=None)
def table_rows():
    return tuple(TableRow(r["name"], r["family"], int(r["p"]), r["module"], r["congruence"],
                          int(r["depth"]), r["input"], r["selector"], r["param"])
                 for r in read_tsv("table1.tsv"))


def row_groups():
    """Rows sharing family, input, selector and parameters, in file order."""
    groups = {}
    for row in table_rows():
        groups.setdefault((row.family, row.input, row.selector, row.param), []).append(row)
    return list(groups.values())


# -- realizations --------------------------------------------------------------------------------


@dataclass
class Realization:
    """Classified input with its explicit C-space and one C-orbit per reported orbit."""

    input: str
    obj: object
    result: Classification
    module: FiniteModule
    space: object
    c_orbits: list  # C-orbit (edge array) per report, or None
    pspace: object = None


@lru_cache(maxsize=None)
def realize(text: str) -> Realization:
    obj = build_input(text)
    if isinstance(obj, FiniteModule):
        result, C = classify_module(obj, name=text.partition(":")[2])
        from .gamma_set import orbit_partition
        return Realization(text, obj, result, obj, C, orbit_partition(C.gamma))
    R = Ring(obj)
    result, P = classify_ring(R, name=str(R.spec))
    cov = P.cover
    C = cov[0] if cov else None
    c_orbits = [P.lift_orbits(o).orbits[0] if cov else None for o in P.orbits]
    return Realization(text, R, result, C.module if C else module_from_ring(R), C, c_orbits, P)


def _anchor_orbit(real: Realization, selector):
    P = real.pspace
    if P is None:
        raise ValueError("orbit-of selectors need a ring input")
    m_text = selector[len("orbit-of:pc("):-len(",1)")]
    ps = _Parser(m_text)
    poly = ps.expr()
    R = real.obj
    m = R.from_coeffs([poly.get(i, 0) for i in range(max(poly, default=0) + 1)])
    e = P.edge("infinity", m)
    return int(P.gamma.orbit_labels[e])


def select(real: Realization, selector, exclude=frozenset()):
    """Orbit indices picked by ``selector``; ``exclude`` holds fingerprints of named orbits."""
    n = len(real.result.orbits)
    if selector == "all":
        return list(range(n))
    if selector.startswith("orbit-of:"):
        return [_anchor_orbit(real, selector)]
    if selector.startswith("rest:"):
        return [i for i, r in enumerate(real.result.orbits)
                if r.fingerprint is None or r.fingerprint not in exclude]
    raise ValueError(f"unknown selector {selector!r}")


@lru_cache(maxsize=None)
def references(name: str):
    """Fingerprints of the subgroup ``name`` as ``[(fingerprint, param)]`` over its parameter values."""
    for group in row_groups():
        names = [r.name for r in group]
        if name in names:
            fams = _group_members(tuple(group))
            return [(fp, par) for fps, par in fams for fp in [fps[names.index(name)]] if fp is not None]
    raise KeyError(name)


@lru_cache(maxsize=None)
def _group_members(group):
    """Per parameter value: (member fingerprints in row order, param text)."""
    row0 = group[0]
    out = []
    for sub in expand_param(row0.param):
        real = realize(substitute(row0.input, sub))
        exclude = frozenset()
        if row0.selector.startswith("rest:"):
            exclude = frozenset(fp for nm in _split_top(row0.selector[5:]) for fp, _ in references(nm))
        sel = select(real, row0.selector, exclude)
        distinct = []
        for i in sel:
            fp = real.result.orbits[i].fingerprint
            if fp is not None and fp not in distinct:
                distinct.append(fp)
        fps = [distinct[j] if j < len(distinct) else None for j in range(len(group))]
        out.append((fps, param_text(sub)))
    return tuple(out)


@lru_cache(maxsize=None)
def registry(p: int):
    """Fingerprint -> [(name, param)] for every subgroup with residue characteristic p."""
    reg = {}
    for row in table_rows():
        if row.p != p:
            continue
        for fp, par in references(row.name):
            reg.setdefault(fp, [])
            if (row.name, par) not in reg[fp]:
                reg[fp].append((row.name, par))
    return reg


def match_reports(result: Classification):
    """Name genus-zero orbits by fingerprint equality with the table realizations."""
    if result.p not in {r.p for r in table_rows()}:
        return result
    reg = registry(result.p)
    for rep in result.orbits:
        if rep.genus_zero and rep.fingerprint is not None and rep.fingerprint in reg:
            rep.table_match, rep.table_param = reg[rep.fingerprint][0]
    return result


# -- verdicts --------------------------------------------------------------------------------------


@dataclass
class Verdict:
    kind: str  # "row", "claim" or "negative"
    name: str
    ok: bool
    diffs: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        tail = "" if self.ok else ": " + "; ".join(self.diffs)
        return f"{status} {self.kind} {self.name}{tail}"


def _module_check(spec: str, A: FiniteModule, sub):
    spec = substitute(spec, sub)
    how, _, body = spec.partition(":")
    if how == "iso":
        target = build_input(body)
        B = module_from_ring(Ring(target)) if not isinstance(target, FiniteModule) else target
        return module_iso(A, B), f"module not isomorphic to {body}"
    if how == "ann":
        rank, _, polys = body.partition(":")
        fs = [parse_laurent(f) for f in _split_top(polys)]
        ok = A.residue_rank == int(rank) and all(A.annihilates(f) for f in fs)
        return ok, f"module not of residue rank {rank} annihilated by {polys}"
    raise ValueError(f"bad module check {spec!r}")


def _split_top(text):
    """Split on commas outside parentheses."""
    out, depth_, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth_ == 0:
            out.append(cur)
            cur = ""
            continue
        depth_ += (ch == "(") - (ch == ")")
        cur += ch
    out.append(cur)
    return [s for s in (x.strip() for x in out) if s]


def _congruence_check(spec: str, C, orbit):
    if spec.startswith("sig:"):
        label = spec[4:]
        level = int("".join(ch for ch in label if ch.isdigit())[:-1] or "0")
        genus = int(label[-1])
        sig = signature(C.gamma, orbit)
        lcm = math.lcm(*sig.cusp_widths)
        diffs = []
        if sig.genus != genus:
            diffs.append(f"genus {sig.genus} != {genus}")
        if lcm != level:
            diffs.append(f"cusp-width lcm {lcm} != level {level}")
        if not has_level_dividing(C.gamma, orbit, level):
            diffs.append(f"not a level-{level} congruence quotient")
        return not diffs, diffs, sig
    coset = coset_gamma_set(parse_congruence_text(spec))
    sig = signature(C.gamma, orbit)
    if iso_gamma_sets(C.gamma, coset, orbit, None) is None:
        return False, [f"lifted orbit ({sig}) not isomorphic to the {spec} cosets"], sig
    return True, [], sig


def verify_group(group) -> list:
    """Verdicts for the rows of one family group."""
    row0 = group[0]
    out = {r.name: Verdict("row", r.name, True) for r in group}
    for fps, par in _group_members(tuple(group)):
        sub = next(s for s in expand_param(row0.param) if param_text(s) == par)
        real = realize(substitute(row0.input, sub))
        tag = f" [{par}]" if par else ""
        exclude = frozenset()
        if row0.selector.startswith("rest:"):
            exclude = frozenset(fp for nm in _split_top(row0.selector[5:]) for fp, _ in references(nm))
        sel = select(real, row0.selector, exclude)
        reports = [real.result.orbits[i] for i in sel]
        distinct = [fp for fp in fps if fp is not None]
        for r in group:
            v = out[r.name]
            if not sel:
                v.diffs.append(f"selector {row0.selector} picks no orbit{tag}")
            if any(not rep.genus_zero for rep in reports):
                v.diffs.append(f"selected orbit not genus-zero{tag}")
            if len(distinct) != len(group):
                v.diffs.append(f"family size {len(distinct)} != {len(group)}{tag}")
        if len(distinct) != len(group) or not sel or real.space is None:
            if real.space is None:
                for r in group:
                    out[r.name].diffs.append("no explicit C-space")
            continue
        ok_mod, msg = _module_check(row0.module, real.module, sub)
        for j, r in enumerate(group):
            v = out[r.name]
            i = next(i for i in sel if real.result.orbits[i].fingerprint == fps[j])
            rep = real.result.orbits[i]
            if rep.depth != r.depth:
                v.diffs.append(f"depth {rep.depth} != {r.depth}{tag}")
            if not ok_mod:
                v.diffs.append(msg + tag)
            ok_c, cdiffs, sig = _congruence_check(r.congruence, real.space, real.c_orbits[i])
            v.diffs += [d + tag for d in cdiffs]
            v.info.setdefault("instances", []).append({
                "param": par, "input": real.input, "orbit": i, "depth": rep.depth,
                "chi": str(rep.chi), "signature": sig.as_dict(), "fingerprint": fps[j].digest,
            })
    for v in out.values():
        v.ok = not v.diffs
    return [out[r.name] for r in group]


def _claims():
    return read_tsv("realizations.tsv")


def verify_claim(row) -> list:
    out = []
    for sub in expand_param(row["param"]):
        text = substitute(row["input"], sub)
        real = realize(text)
        result = real.result
        match_reports(result)
        name = text + (f" [k={sub['k']}]" if sub else "")
        v = Verdict("claim", name, True)
        if row["orbits"] != "*" and len(result.orbits) != int(row["orbits"]):
            v.diffs.append(f"{len(result.orbits)} orbits, expected {row['orbits']}")
        if row["chi"] != "*":
            want = Fraction(row["chi"])
            bad = sorted({str(r.chi) for r in result.orbits if r.chi != want})
            if bad:
                v.diffs.append(f"chi {','.join(bad)} != {want}")
        got = [r.table_match for r in result.genus_zero]
        if None in got:
            v.diffs.append(f"{got.count(None)} genus-zero orbit(s) without a table match")
        want_names = [] if row["genus_zero"] == "-" else row["genus_zero"].split("|")
        counts = {}
        for g in got:
            if g is not None:
                counts[g] = counts.get(g, 0) + 1
        for w in want_names:
            base = w.rstrip("+")
            c = counts.pop(base, 0)
            if (w.endswith("+") and c < 1) or (not w.endswith("+") and c != 1):
                v.diffs.append(f"{base}: {c} orbit(s)")
        if counts:
            v.diffs.append("unexpected " + ",".join(f"{k} x{c}" for k, c in sorted(counts.items())))
        v.info = {"orbits": len(result.orbits), "matches": got}
        v.ok = not v.diffs
        out.append(v)
    return out


def _hypothesis_poly(expr, p):
    f = LaurentPoly.const(1)
    for tok in expr.split("*"):
        tok = tok.strip()
        if tok.isdigit():
            g = LaurentPoly.const(int(tok))
        elif tok.startswith("w"):
            g = special_element("omega", p, int(tok[1:]))
        elif tok.startswith("l"):
            e = int(tok[2:]) if tok.startswith("l^") else 1
            g = LaurentPoly.const(1)
            for _ in range(e):
                g = g * special_element("lambda", p)
        else:
            raise ValueError(f"bad hypothesis factor {tok!r}")
        f = f * g
    return f


def check_hypothesis(text, A: FiniteModule):
    bad = []
    if text.strip() in ("", "-"):
        return bad
    for cond in text.split(","):
        neg = "!=" in cond
        expr = cond.split("!=" if neg else "=")[0]
        zero = A.annihilates(_hypothesis_poly(expr, A.p))
        if zero == neg:
            bad.append(f"hypothesis {cond} fails")
    return bad


def verify_negative(row) -> list:
    out = []
    for sub in expand_param(row["param"]):
        text = substitute(row["input"], sub)
        obj = build_input(text)
        if isinstance(obj, FiniteModule):
            result, _ = classify_module(obj, fingerprints=False)
            A = obj
        else:
            R = Ring(obj)
            result, _ = classify_ring(R, fingerprints=False)
            A = module_from_ring(R) if R.size <= 20000 else None
        v = Verdict("negative", text, True)
        if A is not None:
            v.diffs += check_hypothesis(row["hypothesis"], A)
        if row["orbits"] != "*" and len(result.orbits) != int(row["orbits"]):
            v.diffs.append(f"{len(result.orbits)} orbits, expected {row['orbits']}")
        chis = [r.chi for r in result.orbits]
        rule = row["rule"]
        if rule == "none":
            bad = [c for c in chis if c > 0]
        elif rule == "chi<=0":
            bad = [c for c in chis if c > 0]
        elif rule == "chi<0":
            bad = [c for c in chis if c >= 0]
        else:
            raise ValueError(f"bad rule {rule!r}")
        if bad:
            v.diffs.append(f"rule {rule} violated by chi {','.join(sorted({str(c) for c in bad}))}")
        v.info = {"orbits": len(chis), "chi": sorted({str(c) for c in chis})}
        v.ok = not v.diffs
        out.append(v)
    return out


def verify_table(row=None, claims=True) -> list:
    """Row verdicts (every subgroup), then the orbit-level claims; ``row`` restricts to one family."""
    groups = row_groups()
    if row is not None:
        groups = [g for g in groups if row in {r.name for r in g} or g[0].family == row]
        if not groups:
            raise KeyError(f"no table row named {row!r}")
    verdicts = []
    for g in groups:
        verdicts += verify_group(g)
    if claims and row is None:
        for c in _claims():
            verdicts += verify_claim(c)
    return verdicts


def negative_sweep(workers=None) -> list:
    rows = read_tsv("negatives.tsv")
    with ThreadPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(verify_negative, rows))
    return [v for part in parts for v in part]
