"""Text serialization for matrices, lattices, symbol spaces and reports.

Matrix format: a header line ``rows cols denom`` followed by row-major
whitespace-separated integers.  Lattices always serialize their
canonical Hermite basis.  A symbol-space file is a sequence of named
sections, each holding one matrix block in this format.
"""

import json

from .linalg.lattice import Lattice
from .linalg.matrix import IntMatrix, RatMatrix


def dump_matrix(num, den=1):
    """Serialize an integer matrix (list-of-rows or IntMatrix) over den."""
    if isinstance(num, IntMatrix):
        rows, m, n = num.rows, num.m, num.n
    else:
        rows = num
        m = len(rows)
        n = len(rows[0]) if m else 0
    lines = [f"{m} {n} {den}"]
    for row in rows:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def load_matrix(text):
    """Parse the matrix format; returns (IntMatrix, den)."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    m, n, den = (int(x) for x in lines[0].split())
    rows = []
    for ln in lines[1 : 1 + m]:
        row = [int(x) for x in ln.split()]
        if len(row) != n:
            raise ValueError("row length mismatch in matrix payload")
        rows.append(row)
    if len(rows) != m:
        raise ValueError("row count mismatch in matrix payload")
    return IntMatrix(rows, ncols=n), den


def dump_rat_matrix(M):
    return dump_matrix(M.num, M.den)


def load_rat_matrix(text):
    num, den = load_matrix(text)
    return RatMatrix(num, den)


def dump_lattice(L):
    return dump_matrix(L.basis, L.denom)


def load_lattice(text, ambient_dim=None):
    num, den = load_matrix(text)
    return Lattice(num, den, ambient_dim=ambient_dim if num.m == 0 else None)


def dump_sections(sections):
    """Serialize named matrix blocks: [(name, text_block), ...]."""
    out = []
    for name, block in sections:
        out.append(f"#section {name}")
        out.append(block.rstrip("\n"))
    return "\n".join(out) + "\n"


def load_sections(text):
    sections = {}
    name = None
    buf = []
    for line in text.splitlines():
        if line.startswith("#section "):
            if name is not None:
                sections[name] = "\n".join(buf)
            name = line[len("#section ") :].strip()
            buf = []
        else:
            buf.append(line)
    if name is not None:
        sections[name] = "\n".join(buf)
    return sections


def dump_symbol_space(space):
    """Cacheable text form of a built symbol space."""
    sections = [
        ("meta", dump_matrix([[space.N, space.rank, len(space.symbols)]])),
        ("symbols", dump_matrix([list(s) for s in space.symbols])),
        ("coord", dump_matrix(space.coord_map, 1)),
        ("section_exprs", dump_matrix(_exprs_to_rows(space), 1)),
        ("boundary", dump_matrix(space.boundary, 1)),
        ("cuspidal", dump_lattice(space.cuspidal)),
    ]
    return dump_sections(sections)


def _exprs_to_rows(space):
    n = len(space.symbols)
    rows = []
    for expr in space.section:
        row = [0] * n
        for idx, c in expr.items():
            row[idx] = c
        rows.append(row)
    return rows


def load_symbol_space(text):
    """Rebuild a SymbolSpace from its cache file (skips the presentation)."""
    from .manin import SymbolSpace

    sections = load_sections(text)
    meta, _ = load_matrix(sections["meta"])
    N, rank, nsym = meta.rows[0]
    space = SymbolSpace.__new__(SymbolSpace)
    space.N = N
    space.rank = rank
    syms, _ = load_matrix(sections["symbols"])
    space.symbols = [tuple(r) for r in syms.rows]
    if len(space.symbols) != nsym:
        raise ValueError("symbol count mismatch")
    space.index = {s: i for i, s in enumerate(space.symbols)}
    coord, _ = load_matrix(sections["coord"])
    space.coord_map = [list(r) for r in coord.rows]
    exprs, _ = load_matrix(sections["section_exprs"])
    space.section = [
        {j: v for j, v in enumerate(row) if v} for row in exprs.rows
    ]
    boundary, _ = load_matrix(sections["boundary"])
    space.boundary = boundary
    space.cuspidal = load_lattice(sections["cuspidal"], ambient_dim=rank)
    space._rebuild_cusp_index()
    return space


def report_to_json(report):
    """The stable JSON schema for a TorsionReport."""
    payload = {
        "p": report.p,
        "qs": list(report.qs),
        "d": report.d,
        "M_prime": [str(v) for v in report.m_prime],
        "C": [str(v) for v in report.cuspidal],
        "C_gal": [str(v) for v in report.galois_invariant],
        "C_Q": [str(v) for v in report.rational_cusp],
        "torsion": [str(v) for v in report.torsion],
        "checks": {
            "Mprime_in_C": report.mprime_in_c,
            "CQ_eq_CGal": report.cq_eq_cgal,
            "diamond_agrees": report.diamond_agrees,
        },
        "timings_s": {k: float(v) for k, v in report.timings.items()},
        "status": report.status,
        "error": report.error,
        "eta_skipped": list(report.eta_skipped),
        "annihilation_ok": report.annihilation_ok,
        "CQ_in_CGal": report.cq_in_cgal,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_from_json(text):
    from .pipeline import TorsionReport

    data = json.loads(text)
    return TorsionReport(
        p=data["p"],
        qs=list(data["qs"]),
        d=data["d"],
        m_prime=[int(v) for v in data["M_prime"]],
        cuspidal=[int(v) for v in data["C"]],
        galois_invariant=[int(v) for v in data["C_gal"]],
        rational_cusp=[int(v) for v in data["C_Q"]],
        torsion=[int(v) for v in data["torsion"]],
        mprime_in_c=data["checks"]["Mprime_in_C"],
        cq_eq_cgal=data["checks"]["CQ_eq_CGal"],
        diamond_agrees=data["checks"]["diamond_agrees"],
        cq_in_cgal=data.get("CQ_in_CGal", False),
        annihilation_ok=data.get("annihilation_ok", False),
        eta_skipped=list(data.get("eta_skipped", [])),
        status=data["status"],
        error=data.get("error", ""),
        timings=dict(data["timings_s"]),
    )
