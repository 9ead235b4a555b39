"""Finitely presented infinite graphs.

A schema assembles an infinite graph from four kinds of parts:

* a finite ``core`` graph,
* single one-way infinite ``ray``s, optionally attached to a core vertex
  at position 0,
* ``family``s: one disjoint copy of a finite connected pattern per index
  i in N, every copy attached the same way.  An attachment is either to a
  core vertex (the same vertex for every copy) or *along* a single ray,
  in which case copy i attaches to ray position i.  A family whose
  pattern is a ray (``rayfam``) gives an indexed family of disjoint rays
  hanging off a hub,
* ``clique``s: an infinite complete graph on indices in N, each vertex
  attached to every listed core vertex.

Vertices are tagged tuples::

    ("core", id)  ("ray", name, pos)  ("fam", name, copy, pv)  ("cliq", name, idx)

where ``pv`` is a pattern vertex id for finite patterns and an integer
position for ray families.  Schemas must present connected graphs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property

from .graphs import FiniteGraph, GraphParseError

Vertex = tuple


@dataclass(frozen=True)
class RaySpec:
    name: str
    hub: str | None  # core vertex adjacent to position 0, if any


@dataclass(frozen=True)
class FamilySpec:
    name: str
    pattern: FiniteGraph | None  # None: every copy is a ray over positions 0,1,...
    core_attach: tuple[tuple[str, object], ...]  # (core vertex, pattern vertex)
    ray_attach: tuple[tuple[str, object], ...]  # (ray name, pattern vertex), copy i at position i

    @property
    def is_ray_family(self) -> bool:
        return self.pattern is None

    def pattern_vertices(self) -> list:
        if self.pattern is None:
            raise ValueError("ray family has no finite pattern")
        return sorted(self.pattern.vertices)


@dataclass(frozen=True)
class CliqueSpec:
    name: str
    attach: tuple[str, ...]  # core vertices adjacent to every clique vertex


def vertex_text(v: Vertex) -> str:
    return ":".join(str(part) for part in v)


def vertex_sort_key(v: Vertex):
    return tuple(str(part) for part in v)


class SchemaError(ValueError):
    pass


class SchemaGraph:
    """A validated schema.  Instances are immutable; compare by identity."""

    def __init__(self, core: FiniteGraph, rays=(), families=(), cliques=(), source: str | None = None):
        self.core = core
        self.rays = tuple(rays)
        self.families = tuple(families)
        self.cliques = tuple(cliques)
        self._source = source
        self._component_cache: dict[frozenset, object] = {}
        self._truncation_cache: dict[int, FiniteGraph] = {}
        self._validate()

    # -- validation --------------------------------------------------------

    def _validate(self):
        names = [r.name for r in self.rays] + [f.name for f in self.families] + [
            c.name for c in self.cliques
        ]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise SchemaError(f"duplicate part name(s): {sorted(dupes)}")
        ray_names = {r.name for r in self.rays}
        for r in self.rays:
            if r.hub is not None and r.hub not in self.core.vertices:
                raise SchemaError(f"ray {r.name}: unknown core vertex {r.hub!r}")
        for f in self.families:
            if f.pattern is not None:
                if not f.pattern.vertices:
                    raise SchemaError(f"family {f.name}: empty pattern")
                if not f.pattern.is_connected():
                    raise SchemaError(f"family {f.name}: pattern must be connected")
            for c, pv in f.core_attach:
                if c not in self.core.vertices:
                    raise SchemaError(f"family {f.name}: unknown core vertex {c!r}")
                self._check_pattern_vertex(f, pv)
            for rn, pv in f.ray_attach:
                if rn not in ray_names:
                    raise SchemaError(f"family {f.name}: unknown ray {rn!r}")
                self._check_pattern_vertex(f, pv)
            if f.is_ray_family and f.ray_attach:
                raise SchemaError(f"ray family {f.name}: attachments must be to core vertices")
            if not f.core_attach and not f.ray_attach and (self.core.vertices or len(self.families) + len(self.rays) + len(self.cliques) > 1):
                raise SchemaError(f"family {f.name}: unattached family disconnects the graph")
        for c in self.cliques:
            for cv in c.attach:
                if cv not in self.core.vertices:
                    raise SchemaError(f"clique {c.name}: unknown core vertex {cv!r}")
        self._check_connected()

    def _check_pattern_vertex(self, f: FamilySpec, pv):
        if f.is_ray_family:
            if pv != 0:
                raise SchemaError(f"ray family {f.name}: attachments bind position 0 only")
        elif pv not in f.pattern.vertices:
            raise SchemaError(f"family {f.name}: unknown pattern vertex {pv!r}")

    def _check_connected(self):
        # Quotient connectivity: one node per part, hub edges as declared.
        # Family copies along a ray touch it, so they join its node.
        nodes = set()
        edges = set()
        for v in self.core.vertices:
            nodes.add(("core", v))
        for u, v in self.core.edges:
            edges.add(frozenset({("core", u), ("core", v)}))
        for r in self.rays:
            nodes.add(("ray", r.name))
            if r.hub is not None:
                edges.add(frozenset({("core", r.hub), ("ray", r.name)}))
        for f in self.families:
            nodes.add(("fam", f.name))
            for c, _ in f.core_attach:
                edges.add(frozenset({("core", c), ("fam", f.name)}))
            for rn, _ in f.ray_attach:
                edges.add(frozenset({("ray", rn), ("fam", f.name)}))
        for c in self.cliques:
            nodes.add(("cliq", c.name))
            for cv in c.attach:
                edges.add(frozenset({("core", cv), ("cliq", c.name)}))
        if not nodes:
            raise SchemaError("empty schema")
        adj = {n: set() for n in nodes}
        for e in edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        start = next(iter(sorted(nodes)))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(nodes):
            raise SchemaError("schema is not connected")
        # rays and families that no untouched copy could reach are caught above;
        # a free-standing family of disjoint copies is disconnected by definition
        for f in self.families:
            if not f.core_attach and not f.ray_attach:
                raise SchemaError(f"family {f.name}: disjoint copies form a disconnected graph")

    # -- basic structure -----------------------------------------------------

    @classmethod
    def from_finite(cls, g: FiniteGraph) -> "SchemaGraph":
        return cls(core=g)

    @cached_property
    def is_infinite(self) -> bool:
        return bool(self.rays or self.families or self.cliques)

    def ray_spec(self, name: str) -> RaySpec:
        for r in self.rays:
            if r.name == name:
                return r
        raise KeyError(name)

    def family_spec(self, name: str) -> FamilySpec:
        for f in self.families:
            if f.name == name:
                return f
        raise KeyError(name)

    def clique_spec(self, name: str) -> CliqueSpec:
        for c in self.cliques:
            if c.name == name:
                return c
        raise KeyError(name)

    def aligned_rays(self, fam: FamilySpec) -> list[str]:
        return sorted({rn for rn, _ in fam.ray_attach})

    def contains_vertex(self, v: Vertex) -> bool:
        match v:
            case ("core", x):
                return x in self.core.vertices
            case ("ray", name, pos):
                return (
                    isinstance(pos, int)
                    and pos >= 0
                    and any(r.name == name for r in self.rays)
                )
            case ("fam", name, copy, pv):
                if not (isinstance(copy, int) and copy >= 0):
                    return False
                for f in self.families:
                    if f.name == name:
                        if f.is_ray_family:
                            return isinstance(pv, int) and pv >= 0
                        return pv in f.pattern.vertices
                return False
            case ("cliq", name, idx):
                return (
                    isinstance(idx, int)
                    and idx >= 0
                    and any(c.name == name for c in self.cliques)
                )
        return False

    def check_vertices(self, vs) -> frozenset:
        vs = frozenset(vs)
        for v in vs:
            if not self.contains_vertex(v):
                raise ValueError(f"vertex {vertex_text(v)} not in schema")
        return vs

    def depth(self, v: Vertex) -> int:
        match v:
            case ("core", _):
                return 0
            case ("ray", _, pos):
                return pos
            case ("fam", name, copy, pv):
                if self.family_spec(name).is_ray_family:
                    return max(copy, pv)
                return copy
            case ("cliq", _, idx):
                return idx
        raise ValueError(v)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        if u == v:
            return False
        a, b = sorted((u, v), key=vertex_sort_key)
        match (a, b):
            case (("cliq", n1, i1), ("cliq", n2, i2)):
                return n1 == n2 and i1 != i2
            case (("core", x), ("cliq", n, _)) | (("cliq", n, _), ("core", x)):
                return x in self.clique_spec(n).attach
            case (("ray", n1, p1), ("ray", n2, p2)):
                return n1 == n2 and abs(p1 - p2) == 1
            case (("core", x), ("ray", n, p)) | (("ray", n, p), ("core", x)):
                return p == 0 and self.ray_spec(n).hub == x
            case (("core", x), ("core", y)):
                return self.core.has_edge(x, y)
            case (("fam", n1, c1, p1), ("fam", n2, c2, p2)):
                if n1 != n2 or c1 != c2:
                    return False
                f = self.family_spec(n1)
                if f.is_ray_family:
                    return abs(p1 - p2) == 1
                return f.pattern.has_edge(p1, p2)
            case (("core", x), ("fam", n, _, pv)) | (("fam", n, _, pv), ("core", x)):
                f = self.family_spec(n)
                return (x, pv) in f.core_attach
            case (("ray", rn, p), ("fam", n, c, pv)) | (("fam", n, c, pv), ("ray", rn, p)):
                f = self.family_spec(n)
                return p == c and (rn, pv) in f.ray_attach
        return False

    # -- truncation ------------------------------------------------------

    def vertices_below(self, n: int) -> list[Vertex]:
        """Vertices of the depth-n truncation, deterministically ordered."""
        out: list[Vertex] = [("core", x) for x in sorted(self.core.vertices)]
        for r in self.rays:
            out += [("ray", r.name, p) for p in range(n)]
        for f in self.families:
            for i in range(n):
                if f.is_ray_family:
                    out += [("fam", f.name, i, p) for p in range(n)]
                else:
                    out += [("fam", f.name, i, pv) for pv in f.pattern_vertices()]
        for c in self.cliques:
            out += [("cliq", c.name, i) for i in range(n)]
        return out

    def truncate(self, n: int) -> FiniteGraph:
        """Finite graph on core plus ray positions < n and part indices < n."""
        if n < 1:
            raise ValueError("truncation level must be >= 1")
        if n in self._truncation_cache:
            return self._truncation_cache[n]
        verts = {vertex_text(v) for v in self.vertices_below(n)}
        edges: set[tuple[str, str]] = set()

        def add(u: Vertex, v: Vertex):
            a, b = vertex_text(u), vertex_text(v)
            edges.add((a, b) if a <= b else (b, a))

        for u, v in self.core.edges:
            add(("core", u), ("core", v))
        for r in self.rays:
            for p in range(n - 1):
                add(("ray", r.name, p), ("ray", r.name, p + 1))
            if r.hub is not None:
                add(("core", r.hub), ("ray", r.name, 0))
        for f in self.families:
            for i in range(n):
                if f.is_ray_family:
                    for p in range(n - 1):
                        add(("fam", f.name, i, p), ("fam", f.name, i, p + 1))
                    for c, pv in f.core_attach:
                        add(("core", c), ("fam", f.name, i, pv))
                else:
                    for u, v in f.pattern.edges:
                        add(("fam", f.name, i, u), ("fam", f.name, i, v))
                    for c, pv in f.core_attach:
                        add(("core", c), ("fam", f.name, i, pv))
                    for rn, pv in f.ray_attach:
                        if i < n:
                            add(("ray", rn, i), ("fam", f.name, i, pv))
        for c in self.cliques:
            for i in range(n):
                for j in range(i + 1, n):
                    add(("cliq", c.name, i), ("cliq", c.name, j))
                for cv in c.attach:
                    add(("core", cv), ("cliq", c.name, i))
        g = FiniteGraph(frozenset(verts), frozenset(edges))
        self._truncation_cache[n] = g
        return g

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        if self.core.vertices:
            lines.append("core:")
            lines += [f"v {v}" for v in sorted(self.core.vertices)]
            if self.core.edges:
                lines.append("edge:")
                lines += [f"e {u} {v}" for u, v in sorted(self.core.edges)]
        for r in self.rays:
            lines.append(f"ray {r.name} at {r.hub}" if r.hub else f"ray {r.name}")
        for f in self.families:
            if f.is_ray_family:
                hubs = " ".join(c for c, _ in f.core_attach)
                lines.append(f"rayfam {f.name}" + (f" at {hubs}" if hubs else ""))
            else:
                pat = "; ".join(
                    [f"v {v}" for v in sorted(f.pattern.vertices)]
                    + [f"e {u} {v}" for u, v in sorted(f.pattern.edges)]
                )
                attaches = [f"attach {c} {pv}" for c, pv in f.core_attach]
                attaches += [f"attach along {rn} {pv}" for rn, pv in f.ray_attach]
                lines.append(f"family {f.name} pattern {{ {pat} }} " + " ".join(attaches))
        for c in self.cliques:
            lines.append(f"clique {c.name}" + (f" attach {' '.join(c.attach)}" if c.attach else ""))
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]

    def __repr__(self) -> str:
        return (
            f"SchemaGraph(core={len(self.core.vertices)}v, rays={len(self.rays)}, "
            f"families={len(self.families)}, cliques={len(self.cliques)})"
        )


def parse_vertex(schema: SchemaGraph, text: str) -> Vertex:
    parts = text.split(":")
    try:
        match parts:
            case ["core", x]:
                v = ("core", x)
            case ["ray", name, pos]:
                v = ("ray", name, int(pos))
            case ["fam", name, copy, pv]:
                f = schema.family_spec(name)
                v = ("fam", name, int(copy), int(pv) if f.is_ray_family else pv)
            case ["cliq", name, idx]:
                v = ("cliq", name, int(idx))
            case _:
                raise ValueError
    except (ValueError, KeyError):
        raise ValueError(f"bad vertex text {text!r}") from None
    if not schema.contains_vertex(v):
        raise ValueError(f"vertex {text!r} not in schema")
    return v


# -- DSL parser -------------------------------------------------------------


def parse_schema(text: str) -> SchemaGraph:
    """Parse the schema DSL.

    Sections/directives::

        core:                        # core vertex declarations follow (v lines)
        edge:                        # core edge declarations follow (e lines)
        ray NAME [at COREVERTEX]
        rayfam NAME [at COREVERTEX ...]
        family NAME pattern { v/e entries } attach COREVERTEX PV [PV ...]
                                     ... attach along RAY PV [PV ...]
        clique NAME [attach COREVERTEX ...]

    Pattern entries may be separated by newlines or ``;``.  ``attach``
    clauses may trail the closing brace or stand on their own lines.
    """
    core_v: dict[str, int] = {}
    core_e: dict[tuple[str, str], int] = {}
    rays: list[RaySpec] = []
    families: list[FamilySpec] = []
    cliques: list[CliqueSpec] = []
    section = None
    pending_family: dict | None = None

    def err(msg: str, ln: int):
        raise GraphParseError(msg, ln)

    def close_family(ln: int):
        nonlocal pending_family
        if pending_family is None:
            return
        pf = pending_family
        pending_family = None
        if pf["open"]:
            err(f"family {pf['name']}: unterminated pattern block", ln)
        pverts: dict[str, int] = {}
        pedges: set[tuple[str, str]] = set()
        for entry in pf["entries"]:
            parts = entry.split()
            if parts[:1] == ["v"] and len(parts) == 2:
                if parts[1] in pverts:
                    err(f"family {pf['name']}: duplicate pattern vertex {parts[1]!r}", pf["line"])
                pverts[parts[1]] = 1
            elif parts[:1] == ["e"] and len(parts) == 3:
                if parts[1] == parts[2]:
                    err(f"family {pf['name']}: loop in pattern", pf["line"])
                for x in parts[1:]:
                    if x not in pverts:
                        err(f"family {pf['name']}: undeclared pattern vertex {x!r}", pf["line"])
                pedges.add(tuple(sorted(parts[1:])))
            elif parts:
                err(f"family {pf['name']}: bad pattern entry {entry!r}", pf["line"])
        if not pverts:
            err(f"family {pf['name']}: empty pattern", pf["line"])
        if not pf["core_attach"] and not pf["ray_attach"]:
            err(f"family {pf['name']}: missing attach clause", pf["line"])
        families.append(
            FamilySpec(
                pf["name"],
                FiniteGraph(frozenset(pverts), frozenset(pedges)),
                tuple(pf["core_attach"]),
                tuple(pf["ray_attach"]),
            )
        )

    def parse_attach(tokens: list[str], ln: int, pf: dict):
        # tokens after 'attach'
        if not tokens:
            err("empty attach clause", ln)
        if tokens[0] == "along":
            if len(tokens) < 3:
                err("attach along needs a ray and pattern vertices", ln)
            for pv in tokens[2:]:
                pf["ray_attach"].append((tokens[1], pv))
        else:
            if len(tokens) < 2:
                err("attach needs a core vertex and pattern vertices", ln)
            for pv in tokens[1:]:
                pf["core_attach"].append((tokens[0], pv))

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if pending_family is not None and pending_family["open"]:
            # inside a pattern block
            if "}" in line:
                before, after = line.split("}", 1)
                pending_family["entries"] += [s.strip() for s in before.split(";") if s.strip()]
                pending_family["open"] = False
                rest = after.strip()
                if rest:
                    for clause in rest.split(" attach "):
                        clause = clause.strip()
                        if clause.startswith("attach "):
                            clause = clause[len("attach "):]
                        if clause:
                            parse_attach(clause.split(), ln, pending_family)
            else:
                pending_family["entries"] += [s.strip() for s in line.split(";") if s.strip()]
            continue
        tokens = line.split()
        head = tokens[0]
        if pending_family is not None and head == "attach":
            parse_attach(tokens[1:], ln, pending_family)
            continue
        close_family(ln)
        if line == "core:":
            section = "core"
        elif line == "edge:":
            section = "edge"
        elif head == "v":
            if section != "core":
                err("vertex line outside core section", ln)
            if len(tokens) != 2:
                err("malformed vertex line", ln)
            if tokens[1] in core_v:
                err(f"duplicate vertex {tokens[1]!r}", ln)
            core_v[tokens[1]] = ln
        elif head == "e":
            if section not in ("core", "edge"):
                err("edge line outside core/edge section", ln)
            if len(tokens) != 3:
                err("malformed edge line", ln)
            u, v = tokens[1], tokens[2]
            if u == v:
                err(f"loop at {u!r}", ln)
            for x in (u, v):
                if x not in core_v:
                    err(f"undeclared endpoint {x!r}", ln)
            e = (u, v) if u <= v else (v, u)
            if e in core_e:
                err(f"duplicate edge {u!r} {v!r}", ln)
            core_e[e] = ln
        elif head == "ray":
            if len(tokens) == 2:
                rays.append(RaySpec(tokens[1], None))
            elif len(tokens) == 4 and tokens[2] == "at":
                rays.append(RaySpec(tokens[1], tokens[3]))
            else:
                err("malformed ray line", ln)
        elif head == "rayfam":
            if len(tokens) == 2:
                families.append(FamilySpec(tokens[1], None, (), ()))
            elif len(tokens) >= 4 and tokens[2] == "at":
                families.append(
                    FamilySpec(tokens[1], None, tuple((c, 0) for c in tokens[3:]), ())
                )
            else:
                err("malformed rayfam line", ln)
        elif head == "family":
            if len(tokens) < 3 or tokens[2] != "pattern" or "{" not in line:
                err("malformed family line", ln)
            body = line.split("{", 1)[1]
            pending_family = {
                "name": tokens[1],
                "entries": [],
                "core_attach": [],
                "ray_attach": [],
                "open": True,
                "line": ln,
            }
            if "}" in body:
                before, after = body.split("}", 1)
                pending_family["entries"] += [s.strip() for s in before.split(";") if s.strip()]
                pending_family["open"] = False
                rest = after.strip()
                if rest:
                    if not rest.startswith("attach"):
                        err("unexpected text after pattern block", ln)
                    for clause in ("  " + rest).split(" attach ")[1:]:
                        parse_attach(clause.split(), ln, pending_family)
            else:
                pending_family["entries"] += [s.strip() for s in body.split(";") if s.strip()]
        elif head == "clique":
            if len(tokens) == 2:
                cliques.append(CliqueSpec(tokens[1], ()))
            elif len(tokens) >= 4 and tokens[2] == "attach":
                cliques.append(CliqueSpec(tokens[1], tuple(tokens[3:])))
            else:
                err("malformed clique line", ln)
        else:
            err(f"malformed line {line!r}", ln)
    close_family(len(text.splitlines()))
    core = FiniteGraph(frozenset(core_v), frozenset(core_e))
    try:
        return SchemaGraph(core, rays, families, cliques, source=text)
    except SchemaError as exc:
        raise GraphParseError(str(exc), 0) from exc
