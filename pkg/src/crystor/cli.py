"""Command-line front end.

Input files are plain key/value text with bracketed matrices:

    # Tate curve with q of valuation 5
    p = 5
    t = 1
    mu = [[5]]

Keys: ``p`` (prime), ``t`` (toric rank), ``mu`` (t x t symmetric integer
matrix), ``units`` (optional t x t grid of symbol names).  A ``#``
starts a comment anywhere on a line; matrices may span lines.

Every subcommand prints a human report by default and the canonical
machine report with ``--json``.  Exit codes: 0 success, 1 input error,
2 invariant-suite failure, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import random
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .abelian import (
    FinAbGroup,
    IntMatrix,
    enum_budget,
    kernel_mod_n,
    n_torsion,
    p_primary_part,
)
from .crys import (
    component_group,
    crys1_tate_module,
    crys1_torsion,
    les_report,
    oracle_crys1,
    phi_formula_check,
    phi_n,
    r1crys1_tors,
    tate_closed_form,
)
from .degen import (
    DegenerationData,
    raynaud_decompose,
    recombine,
    torsion_module,
)
from .errors import ArtifactError, BadInput, NotStabilized, ParseError
from .kummer import monodromy_of
from .pushout import (
    ExtNuMorphism,
    check_mp_exactness,
    degeneration_object,
    mp_hom,
    object_direct_sum,
    sum_inclusion,
    sum_projection,
)

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[+-]?[0-9]+")
_KEYS = ("p", "t", "mu", "units")


# ---------------------------------------------------------------------------
# input parsing


def _strip_comment(line: str) -> str:
    # cut the suffix only, so columns before the '#' keep their positions
    return line.split("#", 1)[0]


class _Cursor:
    """Character walker over comment-stripped lines, for matrix values.

    Newlines count as whitespace, which is what lets a matrix continue
    onto following lines until its brackets balance.
    """

    def __init__(self, lines: list[str], i: int, j: int):
        self.lines = lines
        self.i = i
        self.j = j

    def _skip_space(self) -> bool:
        while self.i < len(self.lines):
            line = self.lines[self.i]
            while self.j < len(line) and line[self.j].isspace():
                self.j += 1
            if self.j < len(line):
                return True
            self.i += 1
            self.j = 0
        return False

    def next_token(self, open_pos: tuple[int, int]) -> tuple[str, str, tuple[int, int]]:
        if not self._skip_space():
            raise ParseError("unclosed '[' in matrix", open_pos[0], open_pos[1])
        line = self.lines[self.i]
        c = line[self.j]
        pos = (self.i + 1, self.j + 1)
        if c in "[],":
            self.j += 1
            return c, c, pos
        m = _INT_RE.match(line, self.j)
        if m:
            self.j = m.end()
            return "int", m.group(), pos
        m = _IDENT_RE.match(line, self.j)
        if m:
            self.j = m.end()
            return "name", m.group(), pos
        raise ParseError(f"unexpected character {c!r}", pos[0], pos[1])


def _parse_matrix(lines: list[str], i: int, j: int, kind: str, key: str):
    """Parse a bracketed matrix starting at 0-based (i, j); returns the
    row lists and the line index where parsing should resume."""
    cur = _Cursor(lines, i, j)
    _, _, open_pos = cur.next_token((i + 1, j + 1))
    rows: list[list] = []
    row_positions: list[tuple[int, int]] = []
    typ, text, pos = cur.next_token(open_pos)
    if typ == "]":
        raise ParseError(f"{key} needs at least one row", pos[0], pos[1])
    while True:
        if typ != "[":
            raise ParseError(
                f"expected '[' to start a row of {key}, found {text!r}",
                pos[0], pos[1],
            )
        row_open = pos
        row: list = []
        typ, text, pos = cur.next_token(row_open)
        if typ == "]":
            raise ParseError(f"a row of {key} needs at least one entry",
                             pos[0], pos[1])
        while True:
            if kind == "int":
                if typ != "int":
                    raise ParseError(
                        f"expected an integer in {key}, found {text!r}",
                        pos[0], pos[1],
                    )
                row.append(int(text))
            else:
                if typ != "name":
                    raise ParseError(
                        f"expected a symbol name in {key}, found {text!r}",
                        pos[0], pos[1],
                    )
                row.append(text)
            typ, text, pos = cur.next_token(row_open)
            if typ == ",":
                typ, text, pos = cur.next_token(row_open)
                continue
            if typ == "]":
                break
            raise ParseError(
                f"expected ',' or ']' in a row of {key}, found {text!r}",
                pos[0], pos[1],
            )
        rows.append(row)
        row_positions.append(row_open)
        typ, text, pos = cur.next_token(open_pos)
        if typ == ",":
            typ, text, pos = cur.next_token(open_pos)
            continue
        if typ == "]":
            break
        raise ParseError(
            f"expected ',' or ']' after a row of {key}, found {text!r}",
            pos[0], pos[1],
        )
    width = len(rows[0])
    for k, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(
                f"row {k + 1} of {key} has {len(row)} entries, expected {width}",
                row_positions[k][0], row_positions[k][1],
            )
    line = cur.lines[cur.i] if cur.i < len(cur.lines) else ""
    rest = line[cur.j:]
    if rest.strip():
        pad = len(rest) - len(rest.lstrip())
        raise ParseError(f"unexpected text after {key}",
                         cur.i + 1, cur.j + pad + 1)
    return rows, cur.i + 1


def parse_input(text: str) -> DegenerationData:
    """Parse and validate a degeneration-data file.

    Parse errors carry a 1-based line and column; validation errors name
    the offending field.
    """
    lines = [_strip_comment(raw) for raw in text.split("\n")]
    entries: dict[str, tuple] = {}
    i = 0
    while i < len(lines):
        line = lines[i]
        if not line.strip():
            i += 1
            continue
        lineno = i + 1
        col = len(line) - len(line.lstrip()) + 1
        eq = line.find("=")
        if eq < 0:
            raise ParseError("expected 'key = value'", lineno, col)
        key = line[:eq].strip()
        if not key or not _IDENT_RE.fullmatch(key):
            raise ParseError("expected a key name before '='", lineno, col)
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, col)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno, col)
        rest = line[eq + 1:]
        value_text = rest.strip()
        if not value_text:
            raise ParseError(f"missing value for {key!r}", lineno, eq + 2)
        vcol = eq + 1 + (len(rest) - len(rest.lstrip()))
        if value_text[0] == "[":
            if key in ("p", "t"):
                raise ParseError(f"{key} must be a single integer",
                                 lineno, vcol + 1)
            kind = "name" if key == "units" else "int"
            rows, i = _parse_matrix(lines, i, vcol, kind, key)
            entries[key] = (rows, lineno, vcol + 1)
        else:
            if key in ("mu", "units"):
                raise ParseError(f"{key} must be a bracketed matrix",
                                 lineno, vcol + 1)
            if not _INT_RE.fullmatch(value_text):
                raise ParseError(f"expected an integer value for {key!r}",
                                 lineno, vcol + 1)
            entries[key] = (int(value_text), lineno, vcol + 1)
            i += 1
    for key in ("p", "t", "mu"):
        if key not in entries:
            raise ParseError(f"missing key {key!r}")
    p_val = entries["p"][0]
    t_val, t_line, t_col = entries["t"]
    if t_val < 1:
        raise ParseError("t must be at least 1", t_line, t_col)
    mu_rows, mu_line, mu_col = entries["mu"]
    if len(mu_rows) != t_val or len(mu_rows[0]) != t_val:
        raise ParseError(
            f"mu is {len(mu_rows)}x{len(mu_rows[0])}, expected {t_val}x{t_val}",
            mu_line, mu_col,
        )
    units = None
    if "units" in entries:
        u_rows, u_line, u_col = entries["units"]
        if len(u_rows) != t_val or len(u_rows[0]) != t_val:
            raise ParseError(
                f"units is {len(u_rows)}x{len(u_rows[0])}, "
                f"expected {t_val}x{t_val}",
                u_line, u_col,
            )
        units = tuple(tuple(row) for row in u_rows)
    data = DegenerationData(p_val, IntMatrix.from_rows(mu_rows), units)
    data.validate()
    return data


def _load(path: str) -> tuple[DegenerationData, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise BadInput(f"cannot read {path}: {e.strerror or e}") from None
    digest = hashlib.sha256(raw).hexdigest()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not valid UTF-8: {e}") from None
    try:
        return parse_input(text), digest
    except ParseError as e:
        # keep the embedded position, add the file name
        raise ParseError(f"{path}: {e}") from None


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Report:
    """One command's result: echo, input digest, payload, and the human
    rendering (excluded from equality so machine round-trips compare)."""

    command: str
    digest: str
    payload: dict
    human: str = field(compare=False)

    def machine(self) -> str:
        doc = {
            "command": self.command,
            "input_sha256": self.digest,
            "result": self.payload,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_machine(cls, text: str) -> "Report":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad machine report: {e}") from None
        for key in ("command", "input_sha256", "result"):
            if key not in doc:
                raise ParseError(f"machine report is missing {key!r}")
        return cls(doc["command"], doc["input_sha256"], doc["result"], "")


def _group_doc(g: FinAbGroup) -> dict:
    return {
        "invariant_factors": list(g.invariant_factors),
        "order": g.order,
        "group": str(g),
    }


def _matrix_lines(rows) -> list[str]:
    return ["  [" + ", ".join(str(x) for x in row) + "]" for row in rows]


def _yn(flag: bool) -> str:
    return "yes" if flag else "NO"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_component_group(args) -> tuple[Report, int]:
    data, digest = _load(args.input)
    phi = component_group(data)
    payload = _group_doc(phi)
    lines = [f"component group: {phi} (order {phi.order})"]
    cmd = "component-group"
    if args.p_part:
        cmd += " --p-part"
        pp = p_primary_part(phi, data.p)
        payload["p_primary"] = _group_doc(pp)
        lines.append(f"p-primary part (p = {data.p}): {pp}")
    return Report(cmd, digest, payload, "\n".join(lines)), 0


def _cmd_torsion(args) -> tuple[Report, int]:
    data, digest = _load(args.input)
    tors = torsion_module(data, args.m)
    t = tors.t
    vals = [list(row) for row in tors.ext.val_matrix().as_rows()]
    symbols = [[data.symbol(i, j) for j in range(t)] for i in range(t)]
    payload = {
        "m": args.m,
        "n": tors.n,
        "t": t,
        "val_matrix": vals,
        "unit_symbols": symbols,
        "generators": list(tors.x_labels + tors.y_labels),
        "orders": [tors.n] * (2 * t),
        "ambient_order": tors.ambient_order(),
    }
    lines = [f"torsion at level m = {args.m} (n = {tors.n}), rank t = {t}"]
    lines.append(f"valuations mod {tors.n}:")
    lines += _matrix_lines(vals)
    lines.append("unit symbols:")
    lines += _matrix_lines(symbols)
    labels = ", ".join(tors.x_labels + tors.y_labels)
    lines.append(f"generators {labels}, each of order {tors.n}; "
                 f"ambient order {tors.ambient_order()}")
    return Report(f"torsion --m {args.m}", digest, payload, "\n".join(lines)), 0


def _crys1_payload(rep) -> dict:
    return {
        "n": rep.n,
        "t": rep.t,
        "invariant_factors": list(rep.group.invariant_factors),
        "order": rep.group.order,
        "group": str(rep.group),
        "generators": [list(g) for g in rep.generators],
        "generator_orders": list(rep.generator_orders),
        "is_full": rep.is_full,
        "ambient_order": rep.ambient_order,
    }


def _generator_lines(rep) -> list[str]:
    lines = ["generators (x coordinates first, then y):"]
    for gen, order in zip(rep.generators, rep.generator_orders):
        vec = ", ".join(str(x) for x in gen)
        lines.append(f"  ({vec}) of order {order}")
    return lines


def _cmd_crys1(args) -> tuple[Report, int]:
    data, digest = _load(args.input)
    rep = crys1_torsion(data, args.m)
    payload = {"m": args.m}
    payload.update(_crys1_payload(rep))
    lines = [f"crys1 at level m = {args.m} (n = {rep.n}): "
             f"{rep.describe()} (order {rep.group.order})"]
    lines += _generator_lines(rep)
    lines.append(f"spans the full module: {'yes' if rep.is_full else 'no'}")
    cmd = f"crys1 --m {args.m}"
    code = 0
    if args.oracle:
        cmd += " --oracle"
        ora = oracle_crys1(data, args.m)
        agrees = ora.group == rep.group and ora.lattice() == rep.lattice()
        payload["oracle"] = {
            "invariant_factors": list(ora.group.invariant_factors),
            "order": ora.group.order,
            "agrees": agrees,
        }
        lines.append(f"oracle: {ora.group} (order {ora.group.order}), "
                     f"agreement: {_yn(agrees)}")
        if not agrees:
            code = 2
    return Report(cmd, digest, payload, "\n".join(lines)), code


def _cmd_phi_check(args) -> tuple[Report, int]:
    data, digest = _load(args.input)
    quotient, agrees = phi_formula_check(data, args.m)
    kernel_side = phi_n(data, args.m)
    payload = {
        "m": args.m,
        "n": data.p ** args.m,
        "quotient_invariant_factors": list(quotient.invariant_factors),
        "kernel_invariant_factors": list(kernel_side.invariant_factors),
        "agrees": agrees,
    }
    lines = [
        f"crys1 / toric part at level m = {args.m}: {quotient}",
        f"component-group {data.p}^{args.m}-torsion: {kernel_side}",
        f"agreement: {_yn(agrees)}",
    ]
    code = 0 if agrees else 2
    return Report(f"phi-check --m {args.m}", digest, payload,
                  "\n".join(lines)), code


def _cmd_r1(args) -> tuple[Report, int]:
    data, digest = _load(args.input)
    g = r1crys1_tors(data, cap=args.cap)
    payload = {"cap": args.cap}
    payload.update(_group_doc(g))
    human = f"stable torsion (p = {data.p}): {g} (order {g.order})"
    return Report(f"r1 --cap {args.cap}", digest, payload, human), 0


def _cmd_les(args) -> tuple[Report, int]:
    data, digest = _load(args.input)
    rep = les_report(data, cap=args.cap)
    payload = {
        "cap": rep.cap,
        "stabilized_at": rep.stabilized_at,
        "tate_rank": rep.tate_rank,
        "rational_rank": rep.rational_rank,
        "divisible_rank": rep.divisible_rank,
        "colimit_torsion": list(rep.colimit_torsion.invariant_factors),
        "r1_torsion": list(rep.r1_torsion.invariant_factors),
        "levels": [
            {
                "m": lv.m,
                "injective": lv.injective,
                "composite_zero": lv.composite_zero,
                "orders_match": lv.orders_match,
                "surjective": lv.surjective,
                "ok": lv.ok(),
            }
            for lv in rep.levels
        ],
        "exact": rep.exact,
    }
    lines = [
        f"long exact sequence, cap {rep.cap}:",
        f"  torsion stabilizes at m = {rep.stabilized_at}",
        f"  tate rank {rep.tate_rank}, rational rank {rep.rational_rank}, "
        f"divisible rank {rep.divisible_rank}",
        f"  colimit torsion: {rep.colimit_torsion}",
        f"  stable torsion: {rep.r1_torsion}",
    ]
    for lv in rep.levels:
        lines.append(f"  level m = {lv.m}: {'ok' if lv.ok() else 'FAIL'}")
    lines.append(f"exact: {_yn(rep.exact)}")
    code = 0 if rep.exact else 2
    return Report(f"les --cap {args.cap}", digest, payload,
                  "\n".join(lines)), code


def _cmd_tate(args) -> tuple[Report, int]:
    rep = tate_closed_form(args.v, args.p, args.m)
    seed_text = f"v={args.v} p={args.p} m={args.m}"
    digest = hashlib.sha256(seed_text.encode()).hexdigest()
    payload = {"v": args.v, "p": args.p, "m": args.m,
               "description": rep.describe()}
    payload.update(_crys1_payload(rep))
    lines = [f"tate curve v = {args.v}, p = {args.p}, m = {args.m}: "
             f"{rep.describe()}"]
    lines += _generator_lines(rep)
    lines.append(f"spans the full module: {'yes' if rep.is_full else 'no'}")
    cmd = f"tate --v {args.v} --p {args.p} --m {args.m}"
    return Report(cmd, digest, payload, "\n".join(lines)), 0


# ---------------------------------------------------------------------------
# the verification suite


def _vp(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _matrix_poly(mat: IntMatrix, coeffs: list[int], n: int) -> IntMatrix:
    size = mat.rows
    power = IntMatrix.identity(size)
    rows = [[0] * size for _ in range(size)]
    for c in coeffs:
        for i in range(size):
            for j in range(size):
                rows[i][j] = (rows[i][j] + c * power.entry(i, j)) % n
        power = power.mul(mat)
    return IntMatrix.from_rows(rows)


def _poly_endomorphism(obj, rng: random.Random) -> ExtNuMorphism:
    # polynomials in the monodromy matrix commute with it, so the same
    # matrix on both parts always satisfies the morphism square
    coeffs = [rng.randrange(obj.n) for _ in range(3)]
    mat = _matrix_poly(obj.nu.matrix, coeffs, obj.n)
    return ExtNuMorphism(obj, obj, mat, mat)


def _keep_first_block(a) -> ExtNuMorphism:
    total = object_direct_sum(a, a)
    mult_rows = [
        [1 if j == i else 0 for j in range(total.mult_rank)]
        for i in range(a.mult_rank)
    ]
    etale_rows = [
        [1 if j == i else 0 for j in range(total.etale_rank)]
        for i in range(a.etale_rank)
    ]
    return ExtNuMorphism(total, a, IntMatrix.from_rows(mult_rows),
                         IntMatrix.from_rows(etale_rows))


def _verify_checks(data: DegenerationData, max_m: int,
                   seed: int) -> list[tuple[str, bool, str]]:
    checks: list[tuple[str, bool, str]] = []

    def add(name: str, ok: bool, detail: str = ""):
        checks.append((name, ok, detail if not ok else ""))

    p, t, mu = data.p, data.t, data.mu
    coker = component_group(data)
    oracle_space = min(1 << 12, enum_budget())

    for m in range(1, max_m + 1):
        n = p ** m
        tors = torsion_module(data, m)
        eta1, nu = raynaud_decompose(data, m)
        add(f"raynaud recombination at m={m}",
            recombine(eta1, nu) == tors.ext)
        add(f"monodromy matrix at m={m}",
            monodromy_of(tors.ext).matrix == mu.mod(n)
            and nu.matrix == mu.mod(n))
        if m > 1:
            add(f"level reduction m={m}->{m - 1}",
                tors.ext.reduce_to(p ** (m - 1))
                == torsion_module(data, m - 1).ext)
        kernel_route = kernel_mod_n(mu, n)[0]
        torsion_route = n_torsion(coker, n)
        add(f"kernel vs torsion routes at m={m}",
            kernel_route == torsion_route,
            f"{kernel_route} vs {torsion_route}")
        quotient, agrees = phi_formula_check(data, m)
        add(f"component formula at m={m}", agrees,
            f"quotient {quotient}")
        rep = crys1_torsion(data, m)
        expected = p ** (m * t)
        for d in coker.invariant_factors:
            expected *= math.gcd(d, n)
        add(f"order law at m={m}", rep.group.order == expected,
            f"order {rep.group.order}, expected {expected}")
        if n ** t <= oracle_space:
            ora = oracle_crys1(data, m)
            add(f"oracle agreement at m={m}",
                ora.group == rep.group and ora.lattice() == rep.lattice(),
                f"oracle {ora.group} vs {rep.group}")
        if t == 1:
            closed = tate_closed_form(mu.entry(0, 0), p, m)
            add(f"closed form at m={m}",
                closed.group == rep.group
                and closed.lattice() == rep.lattice(),
                f"closed {closed.group} vs {rep.group}")

    cap = max(12, _vp(coker.exponent(), p) + 2)
    try:
        stable = r1crys1_tors(data, cap=cap)
        target = p_primary_part(coker, p)
        add("r1 stabilization", stable == target,
            f"{stable} vs p-primary {target}")
    except NotStabilized as e:
        add("r1 stabilization", False, str(e))
    les = les_report(data, cap=cap)
    add("long exact sequence", les.exact,
        f"flags {[lv.ok() for lv in les.levels]}")
    tate_rep = crys1_tate_module(data)
    add("tate module coherence",
        tate_rep.reduction_compatible and tate_rep.y_part_vanishes,
        f"reduction {tate_rep.reduction_compatible}, "
        f"y-part {tate_rep.y_part_vanishes}")

    rng = random.Random(seed)
    obj = degeneration_object(data, min(max_m, 2))
    functorial = True
    detail = ""
    for _ in range(5):
        f = _poly_endomorphism(obj, rng)
        g = _poly_endomorphism(obj, rng)
        if mp_hom(g.compose(f)) != mp_hom(g).compose(mp_hom(f)):
            functorial = False
            detail = "composite presentation map mismatch"
            break
    add(f"pushout functoriality (seed {seed})", functorial, detail)
    add("split triple exact",
        check_mp_exactness(sum_inclusion(obj, obj),
                           sum_projection(obj, obj)))
    add("broken triple rejected",
        not check_mp_exactness(sum_inclusion(obj, obj),
                               _keep_first_block(obj)))
    return checks


def _cmd_verify(args) -> tuple[Report, int]:
    data, digest = _load(args.input)
    checks = _verify_checks(data, args.max_m, args.seed)
    passed = sum(1 for _, ok, _ in checks if ok)
    payload = {
        "max_m": args.max_m,
        "seed": args.seed,
        "checks": [
            {"name": name, "ok": ok, "detail": detail}
            for name, ok, detail in checks
        ],
        "passed": passed,
        "total": len(checks),
    }
    lines = []
    for name, ok, detail in checks:
        if ok:
            lines.append(f"ok {name}")
        elif detail:
            lines.append(f"FAIL {name}: {detail}")
        else:
            lines.append(f"FAIL {name}")
    lines.append(f"passed {passed}/{len(checks)}")
    code = 0 if passed == len(checks) else 2
    cmd = f"verify --max-m {args.max_m} --seed {args.seed}"
    return Report(cmd, digest, payload, "\n".join(lines)), code


# ---------------------------------------------------------------------------
# dispatch


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise BadInput(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="crystor",
        description="Maximal 1-crystalline torsion of totally degenerate "
                    "semistable degeneration data.",
    )
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="SUBCOMMAND")

    def add(name: str, help_text: str, with_file: bool = True):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--json", action="store_true",
                        help="emit the canonical machine report")
        if with_file:
            sp.add_argument("input", metavar="FILE",
                            help="degeneration-data input file")
        return sp

    sp = add("component-group", "invariant factors of the component group")
    sp.add_argument("--p-part", action="store_true", dest="p_part",
                    help="also print the p-primary part")

    sp = add("torsion", "valuations and unit symbols of the level-m torsion")
    sp.add_argument("--m", type=int, required=True,
                    help="level exponent; the modulus is p^m")

    sp = add("crys1", "maximal 1-crystalline submodule at level m")
    sp.add_argument("--m", type=int, required=True,
                    help="level exponent; the modulus is p^m")
    sp.add_argument("--oracle", action="store_true",
                    help="cross-check against exhaustive subgroup enumeration")

    sp = add("phi-check", "compare the crys1 quotient with component-group "
                          "torsion")
    sp.add_argument("--m", type=int, required=True,
                    help="level exponent; the modulus is p^m")

    sp = add("r1", "stable torsion of the level tower")
    sp.add_argument("--cap", type=int, default=12,
                    help="largest level to test for stabilization")

    sp = add("les", "finite-level long-exact-sequence report")
    sp.add_argument("--cap", type=int, default=12,
                    help="largest level to test for stabilization")

    sp = add("tate", "closed form for a rank-one lattice", with_file=False)
    sp.add_argument("--v", type=int, required=True,
                    help="valuation of the period q")
    sp.add_argument("--p", type=int, required=True, help="residue prime")
    sp.add_argument("--m", type=int, required=True,
                    help="level exponent; the modulus is p^m")

    sp = add("verify", "run the full invariant suite on an input file")
    sp.add_argument("--max-m", type=int, default=3, dest="max_m",
                    help="largest level for the per-level checks")
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for the randomized checks")
    return parser


_DISPATCH = {
    "component-group": _cmd_component_group,
    "torsion": _cmd_torsion,
    "crys1": _cmd_crys1,
    "phi-check": _cmd_phi_check,
    "r1": _cmd_r1,
    "les": _cmd_les,
    "tate": _cmd_tate,
    "verify": _cmd_verify,
}


def run_command(argv: list[str]) -> tuple[Report, int]:
    """Parse argv and run the subcommand; returns the report and exit
    code, raising ArtifactError subclasses on bad input."""
    args = build_parser().parse_args(argv)
    return _DISPATCH[args.command](args)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report, code = _DISPATCH[args.command](args)
    except ArtifactError as e:
        print(f"error: {e.identifier}: {e}", file=sys.stderr)
        return e.exit_code
    sys.stdout.write(report.machine() if args.json else report.human + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
