"""Line-oriented instance and certificate formats (1-based vertex labels).

Instance::

    # comment
    p dig <n> <m>
    a <u> <v>            (m records)
    v <label> <vertex>   (optional designated vertices)

Certificate::

    s yes|no|kernel
    r <root>
    t <u> <v>            (tree arcs)
    q <v1> <v2> ...      (one record per path)
    k <instance line>    (kernel block: the kernel instance with its cover
                          as ``k v cover <u>`` records)
    o <kernel vertex> <input vertex>   (origin of each kernel vertex)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .branching import OutTree, VertexCover
from .digraph import Digraph, DigraphError, build_digraph
from .exact import PbgvAnswer
from .kernelization import KernelReduced, KernelSolved
from .reductions import PathCover, PathCoverAnswer


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Instance:
    digraph: Digraph
    records: tuple[tuple[str, int], ...] = ()

    @property
    def designated(self) -> dict[str, int]:
        return dict(self.records)


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(text: str) -> Instance:
    return _parse_instance_lines(enumerate(text.splitlines(), start=1))


def _parse_instance_lines(lines) -> Instance:
    n = m = None
    header_line = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    records: list[tuple[str, int]] = []
    pending_records: list[tuple[str, int, int]] = []
    for lineno, raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "p":
            if n is not None:
                raise ParseError("second header", lineno)
            if len(tokens) != 4 or tokens[1] != "dig":
                raise ParseError("header must read 'p dig <n> <m>'", lineno)
            n, m = _ints(tokens[2:], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative size in header", lineno)
            header_line = lineno
        elif tag == "a":
            if n is None:
                raise ParseError("arc before header", lineno)
            if len(tokens) != 3:
                raise ParseError("arc must read 'a <u> <v>'", lineno)
            u, v = _ints(tokens[1:], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex {x} outside 1..{n}", lineno)
            if u == v:
                raise ParseError(f"loop at vertex {u}", lineno)
            if (u, v) in seen:
                raise ParseError(f"duplicate arc {u} {v}", lineno)
            seen.add((u, v))
            arcs.append((u - 1, v - 1))
        elif tag == "v":
            if len(tokens) != 3:
                raise ParseError("designated vertex must read 'v <label> <vertex>'", lineno)
            (x,) = _ints(tokens[2:], lineno)
            pending_records.append((tokens[1], x, lineno))
        else:
            raise ParseError(f"unknown record {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p dig' header")
    if len(arcs) != m:
        raise ParseError(f"header announces {m} arcs, found {len(arcs)}", header_line)
    for label, x, lineno in pending_records:
        if not 1 <= x <= n:
            raise ParseError(f"vertex {x} outside 1..{n}", lineno)
        records.append((label, x - 1))
    try:
        D = build_digraph(n, arcs)
    except DigraphError as exc:  # pragma: no cover - caught above
        raise ParseError(str(exc)) from exc
    return Instance(D, tuple(records))


def format_instance(D: Digraph, records=(), prefix: str = "") -> str:
    if isinstance(records, dict):
        records = list(records.items())
    lines = [f"p dig {D.n} {D.m}"]
    lines += [f"a {u + 1} {v + 1}" for u, v in D.sorted_arcs()]
    lines += [f"v {label} {x + 1}" for label, x in records]
    return "".join(f"{prefix}{line}\n" for line in lines)


# --------------------------------------------------------------------------
# Certificates
# --------------------------------------------------------------------------


@dataclass
class Certificate:
    """Parsed certificate; vertices are 0-based."""

    status: str
    root: int | None = None
    tree: list[tuple[int, int]] = field(default_factory=list)
    paths: list[tuple[int, ...]] = field(default_factory=list)
    kernel: Instance | None = None
    origin: list[int] = field(default_factory=list)

    def out_tree(self) -> OutTree | None:
        if self.root is None:
            return None
        return OutTree.from_arcs(self.root, self.tree)

    @property
    def kernel_cover(self) -> list[int]:
        return [x for label, x in self.kernel.records if label == "cover"] if self.kernel else []


def to_certificate(result) -> Certificate:
    if isinstance(result, Certificate):
        return result
    if result is None:
        return Certificate("no")
    if isinstance(result, OutTree):
        return Certificate("yes", root=result.root, tree=result.arcs())
    if isinstance(result, PathCover):
        return Certificate("yes", paths=list(result.paths))
    if isinstance(result, PathCoverAnswer):
        return to_certificate(result.cover) if result.yes else Certificate("no")
    if isinstance(result, PbgvAnswer):
        return to_certificate(result.witness) if result.yes else Certificate("no")
    if isinstance(result, KernelSolved):
        return to_certificate(result.witness)
    if isinstance(result, KernelReduced):
        records = tuple(("cover", x) for x in sorted(result.cover.members))
        return Certificate(
            "kernel",
            kernel=Instance(result.kernel, records),
            origin=list(result.vertex_map),
        )
    raise TypeError(f"cannot certify {type(result).__name__}")


def format_certificate(result, fmt: str = "text") -> str:
    cert = to_certificate(result)
    if fmt == "json":
        return json.dumps(_certificate_json(cert), sort_keys=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"s {cert.status}"]
    if cert.root is not None:
        lines.append(f"r {cert.root + 1}")
    lines += [f"t {u + 1} {v + 1}" for u, v in sorted(cert.tree)]
    lines += ["q " + " ".join(str(v + 1) for v in p) for p in cert.paths]
    text = "".join(line + "\n" for line in lines)
    if cert.kernel is not None:
        text += format_instance(cert.kernel.digraph, cert.kernel.records, prefix="k ")
    text += "".join(f"o {i + 1} {x + 1}\n" for i, x in enumerate(cert.origin))
    return text


def _certificate_json(cert: Certificate) -> dict:
    out: dict = {"status": cert.status}
    if cert.root is not None:
        out["root"] = cert.root + 1
    if cert.tree:
        out["tree"] = [[u + 1, v + 1] for u, v in sorted(cert.tree)]
    if cert.paths:
        out["paths"] = [[v + 1 for v in p] for p in cert.paths]
    if cert.kernel is not None:
        K = cert.kernel.digraph
        out["kernel"] = {
            "n": K.n,
            "m": K.m,
            "arcs": [[u + 1, v + 1] for u, v in K.sorted_arcs()],
            "cover": [x + 1 for x in cert.kernel_cover],
            "origin": [x + 1 for x in cert.origin],
        }
    return out


def parse_certificate(text: str) -> Certificate:
    if text.lstrip().startswith("{"):
        return _certificate_from_json(json.loads(text))
    cert = None
    kernel_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        tag, rest = tokens[0], tokens[1:]
        if tag == "s":
            if cert is not None or len(rest) != 1 or rest[0] not in ("yes", "no", "kernel"):
                raise ParseError("status must read 's yes|no|kernel' once, first", lineno)
            cert = Certificate(rest[0])
            continue
        if cert is None:
            raise ParseError("certificate must start with a status line", lineno)
        if tag == "r":
            if len(rest) != 1 or cert.root is not None:
                raise ParseError("root must read 'r <vertex>' once", lineno)
            cert.root = _ints(rest, lineno)[0] - 1
        elif tag == "t":
            if len(rest) != 2:
                raise ParseError("tree arc must read 't <u> <v>'", lineno)
            u, v = _ints(rest, lineno)
            cert.tree.append((u - 1, v - 1))
        elif tag == "q":
            if not rest:
                raise ParseError("empty path record", lineno)
            cert.paths.append(tuple(x - 1 for x in _ints(rest, lineno)))
        elif tag == "k":
            kernel_lines.append((lineno, " ".join(rest)))
        elif tag == "o":
            if len(rest) != 2:
                raise ParseError("origin must read 'o <kernel vertex> <input vertex>'", lineno)
            i, x = _ints(rest, lineno)
            if i != len(cert.origin) + 1:
                raise ParseError("origin records must list kernel vertices in order", lineno)
            cert.origin.append(x - 1)
        else:
            raise ParseError(f"unknown record {tag!r}", lineno)
    if cert is None:
        raise ParseError("empty certificate")
    if kernel_lines:
        cert.kernel = _parse_instance_lines(kernel_lines)
    return cert


def _certificate_from_json(obj: dict) -> Certificate:
    cert = Certificate(obj["status"])
    if "root" in obj:
        cert.root = obj["root"] - 1
    cert.tree = [(u - 1, v - 1) for u, v in obj.get("tree", [])]
    cert.paths = [tuple(x - 1 for x in p) for p in obj.get("paths", [])]
    if "kernel" in obj:
        K = obj["kernel"]
        D = build_digraph(K["n"], [(u - 1, v - 1) for u, v in K["arcs"]])
        cert.kernel = Instance(D, tuple(("cover", x - 1) for x in K["cover"]))
        cert.origin = [x - 1 for x in K["origin"]]
    return cert


def verify_certificate(
    D: Digraph, cert: Certificate, k: int | None = None, spanning: bool = True
) -> list[str]:
    """Independent re-check of a certificate against its instance; empty means valid."""
    problems: list[str] = []
    if cert.status == "no":
        if cert.root is not None or cert.tree or cert.paths or cert.kernel:
            problems.append("a 'no' certificate carries no witness")
        return problems

    if cert.status == "yes" and cert.root is not None:
        try:
            T = cert.out_tree()
        except ValueError as exc:
            return [f"tree records do not form an out-tree: {exc}"]
        problems += T.problems(D, spanning=spanning)
        if k is not None and T.internal_count < k:
            problems.append(f"tree has {T.internal_count} internal vertices, fewer than {k}")
    elif cert.status == "yes" and cert.paths:
        cover = PathCover(tuple(cert.paths))
        problems += cover.problems(D)
        if k is not None and len(cover) > D.n - k:
            problems.append(f"{len(cover)} paths exceed n - k = {D.n - k}")
    elif cert.status == "kernel" and cert.kernel is not None:
        K = cert.kernel.digraph
        origin = cert.origin
        if len(origin) != K.n or len(set(origin)) != K.n:
            problems.append("origin map must list one distinct input vertex per kernel vertex")
        elif any(not 0 <= x < D.n for x in origin):
            problems.append("origin map leaves the input vertex range")
        else:
            induced, _ = D.induced(origin)
            if sorted(origin) != origin:
                problems.append("origin map must be increasing")
            elif induced.arcs != K.arcs:
                problems.append("kernel is not the induced subgraph on its origin vertices")
        if not VertexCover(frozenset(cert.kernel_cover)).covers(K):
            problems.append("kernel cover misses an arc")
        if k is not None and K.n > 8 * k * k + 6 * k:
            problems.append(f"kernel has {K.n} vertices, above 8k^2 + 6k")
    else:
        problems.append("certificate carries no witness")
    return problems
