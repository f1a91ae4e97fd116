"""Project files: one JSON document holding named groups, complexes,
actions, complexes of groups and witnesses, cross-referenced by name.

Group elements are written in 1-based cycle notation (``"(1 2 3)"``, ``"()"``)
or as 1-based image lists.  Simplices are lists of vertex names.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .complexes import ComplexOfGroups, MorphismToGroup, SimplicialAction, induce_from_action, trivial_cog
from .groups import GroupError, Permutation, cyclic_group, group_generate, make_hom, symmetric_group, trivial_group
from .scwol import scwol_of_complex
from .simplicial import ComplexError, build_complex

SCHEMA_VERSION = 1


class ProjectError(ValueError):
    """Schema or reference problem, located by a JSON path."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


def _obj(node, path, keys=None):
    if not isinstance(node, dict):
        raise ProjectError(path, "expected an object")
    if keys:
        for k in keys:
            if k not in node:
                raise ProjectError(f"{path}.{k}", "missing required field")
    return node


def _list(node, path):
    if not isinstance(node, list):
        raise ProjectError(path, "expected a list")
    return node


def parse_element(text, degree, path):
    try:
        if isinstance(text, list):
            p = Permutation.from_images(text)
        elif isinstance(text, str):
            p = Permutation.from_cycles(degree, text)
        else:
            raise ProjectError(path, "expected a cycle string or an image list")
    except GroupError as e:
        raise ProjectError(path, str(e)) from None
    if p.degree != degree:
        raise ProjectError(path, f"element of degree {p.degree}, expected {degree}")
    return p


def element_in(G, text, path):
    g = parse_element(text, G.degree, path)
    if g not in G:
        raise ProjectError(path, f"{g} is not in the group")
    return g


def parse_group(node, path):
    _obj(node, path)
    try:
        if "cyclic" in node:
            return cyclic_group(int(node["cyclic"]))
        if "symmetric" in node:
            return symmetric_group(int(node["symmetric"]))
        if node.get("trivial"):
            return trivial_group(1)
        _obj(node, path, ["degree", "generators"])
        n = node["degree"]
        gens = [parse_element(g, n, f"{path}.generators[{i}]") for i, g in enumerate(_list(node["generators"], f"{path}.generators"))]
        return group_generate(n, gens)
    except GroupError as e:
        raise ProjectError(path, str(e)) from None


def parse_complex(node, path):
    _obj(node, path, ["facets"])
    facets = [tuple(f) for f in _list(node["facets"], f"{path}.facets")]
    try:
        return build_complex(facets, node.get("vertices"))
    except ComplexError as e:
        raise ProjectError(path, str(e)) from None


def _simplex(names, path, K):
    s = tuple(sorted(_list(names, path)))
    if s not in K:
        raise ProjectError(path, f"{list(s)} is not a simplex")
    return s


class Project:
    """A parsed project; induced complexes of groups are built on demand."""

    def __init__(self, data, source=None):
        self.data = data
        self.source = source
        self.groups = {}
        self.complexes = {}
        self.actions = {}
        self._cog_nodes = {}
        self._cogs = {}
        self._witness_nodes = {}
        self._parse()

    def digest(self, *extra):
        h = hashlib.sha256(json.dumps(self.data, sort_keys=True).encode())
        for e in extra:
            h.update(str(e).encode())
        return h.hexdigest()

    def _ref(self, table, name, path, what):
        if name not in table:
            raise ProjectError(path, f"unknown {what} {name!r}")
        return table[name]

    def _parse(self):
        d = _obj(self.data, "$")
        if "schema_version" not in d:
            raise ProjectError("$.schema_version", "missing required field")
        if d["schema_version"] != SCHEMA_VERSION:
            raise ProjectError("$.schema_version", f"unsupported version {d['schema_version']!r}")
        for name, node in _obj(d.get("groups", {}), "$.groups").items():
            self.groups[name] = parse_group(node, f"$.groups.{name}")
        for name, node in _obj(d.get("complexes", {}), "$.complexes").items():
            self.complexes[name] = parse_complex(node, f"$.complexes.{name}")
        for name, node in _obj(d.get("actions", {}), "$.actions").items():
            self.actions[name] = self._parse_action(node, f"$.actions.{name}")
        for name, node in _obj(d.get("cogs", {}), "$.cogs").items():
            path = f"$.cogs.{name}"
            _obj(node, path)
            if "induced_from" in node:
                self._ref(self.actions, node["induced_from"], f"{path}.induced_from", "action")
            elif "trivial_over" in node:
                self._ref(self.complexes, node["trivial_over"], f"{path}.trivial_over", "complex")
            else:
                self._cogs[name] = (self._parse_cog(node, path), None)
            self._cog_nodes[name] = node
        for name, node in _obj(d.get("witnesses", {}), "$.witnesses").items():
            path = f"$.witnesses.{name}"
            _obj(node, path, ["cog", "group"])
            self._ref(self._cog_nodes, node["cog"], f"{path}.cog", "cog")
            self._ref(self.groups, node["group"], f"{path}.group", "group")
            self._witness_nodes[name] = node
        # explicit witnesses are resolved eagerly so errors surface at parse time
        for name in self._witness_nodes:
            if "induced_from" not in self._cog_nodes[self._witness_nodes[name]["cog"]]:
                self.witness(name)

    def _parse_action(self, node, path):
        _obj(node, path, ["group", "complex", "generators"])
        G = self._ref(self.groups, node["group"], f"{path}.group", "group")
        K = self._ref(self.complexes, node["complex"], f"{path}.complex", "complex")
        maps = _list(node["generators"], f"{path}.generators")
        for i, m in enumerate(maps):
            _obj(m, f"{path}.generators[{i}]")
        try:
            A = SimplicialAction.from_generators(G, K, maps)
            for _ in range(int(node.get("subdivisions", 0))):
                A = A.subdivide()
        except (ValueError, KeyError) as e:
            raise ProjectError(path, f"invalid action: {e}") from None
        return A

    def _parse_cog(self, node, path):
        _obj(node, path, ["complex", "local_groups"])
        K = self._ref(self.complexes, node["complex"], f"{path}.complex", "complex")
        S = scwol_of_complex(K)
        groups = {}
        for i, entry in enumerate(_list(node["local_groups"], f"{path}.local_groups")):
            p = f"{path}.local_groups[{i}]"
            _obj(entry, p, ["simplex", "group"])
            s = _simplex(entry["simplex"], f"{p}.simplex", K)
            groups[s] = self._ref(self.groups, entry["group"], f"{p}.group", "group")
        if "default_group" in node:
            G0 = self._ref(self.groups, node["default_group"], f"{path}.default_group", "group")
            groups.update({s: G0 for s in K.simplices if s not in groups})
        missing = [s for s in K.simplices if s not in groups]
        if missing:
            raise ProjectError(f"{path}.local_groups", f"no group for simplex {list(missing[0])}")
        psi = {}
        for i, entry in enumerate(node.get("psi", [])):
            p = f"{path}.psi[{i}]"
            _obj(entry, p, ["small", "big"])
            a = (_simplex(entry["small"], f"{p}.small", K), _simplex(entry["big"], f"{p}.big", K))
            if a not in S.initial:
                raise ProjectError(p, "not an arrow (small must be a proper face of big)")
            src, dst = groups[a[1]], groups[a[0]]
            imgs = [element_in(dst, g, f"{p}.images[{j}]") for j, g in enumerate(entry.get("images", []))]
            try:
                psi[a] = make_hom(src, dst, imgs) if imgs else make_hom(src, dst, [dst.identity] * len(src.generators))
            except GroupError as e:
                raise ProjectError(p, str(e)) from None
        for a in S.arrows:
            if a not in psi:
                src, dst = groups[a[1]], groups[a[0]]
                try:
                    psi[a] = make_hom(src, dst, [dst.identity] * len(src.generators))
                except GroupError as e:
                    raise ProjectError(f"{path}.psi", f"arrow {a}: {e}") from None
        twists = {}
        for i, entry in enumerate(node.get("twists", [])):
            p = f"{path}.twists[{i}]"
            _obj(entry, p, ["chain", "element"])
            chain = [_simplex(s, f"{p}.chain[{j}]", K) for j, s in enumerate(_list(entry["chain"], f"{p}.chain"))]
            if len(chain) != 3:
                raise ProjectError(f"{p}.chain", "expected three simplices small < mid < big")
            b, a = (chain[0], chain[1]), (chain[1], chain[2])
            if (b, a) not in S.compose:
                raise ProjectError(f"{p}.chain", "not a strictly increasing chain of simplices")
            twists[(b, a)] = element_in(groups[chain[0]], entry["element"], f"{p}.element")
        return ComplexOfGroups(S, groups, psi, twists, complex=K)

    # lookups ----------------------------------------------------------------
    def cog_names(self):
        return sorted(self._cog_nodes)

    def witness_names(self):
        return sorted(self._witness_nodes)

    def cog(self, name, policy=None):
        """``(cog, morphism)``; the morphism is the canonical one for induced
        complexes of groups and ``None`` otherwise."""
        node = self._ref(self._cog_nodes, name, f"$.cogs.{name}", "cog")
        if "induced_from" in node:
            pol = policy or node.get("policy", "canonical")
            key = (name, pol)
            if key not in self._cogs:
                try:
                    cog, F, data = induce_from_action(self.actions[node["induced_from"]], pol)
                except ValueError as e:
                    raise ProjectError(f"$.cogs.{name}", f"induction failed: {e}") from None
                cog.induced = data
                self._cogs[key] = (cog, F)
            return self._cogs[key]
        if "trivial_over" in node:
            if name not in self._cogs:
                self._cogs[name] = (trivial_cog(self.complexes[node["trivial_over"]]), None)
            return self._cogs[name]
        return self._cogs[name]

    def witness(self, name):
        path = f"$.witnesses.{name}"
        node = self._ref(self._witness_nodes, name, path, "witness")
        C, induced = self.cog(node["cog"])
        G = self.groups[node["group"]]
        if "induced_from" in self._cog_nodes[node["cog"]]:
            if induced.target != G:
                raise ProjectError(f"{path}.group", "an induced complex of groups maps to its acting group")
            return induced
        K = C.complex
        F_obj = {}
        for i, entry in enumerate(node.get("local", [])):
            p = f"{path}.local[{i}]"
            _obj(entry, p, ["simplex"])
            s = _simplex(entry["simplex"], f"{p}.simplex", K)
            imgs = [element_in(G, g, f"{p}.images[{j}]") for j, g in enumerate(entry.get("images", []))]
            src = C.group(s)
            try:
                F_obj[s] = make_hom(src, G, imgs or [G.identity] * len(src.generators))
            except GroupError as e:
                raise ProjectError(p, str(e)) from None
        for s in C.base.objects:
            if s not in F_obj:
                src = C.group(s)
                try:
                    F_obj[s] = make_hom(src, G, [G.identity] * len(src.generators))
                except GroupError as e:
                    raise ProjectError(f"{path}.local", f"simplex {list(s)}: {e}") from None
        F_arrow = {}
        for i, entry in enumerate(node.get("arrows", [])):
            p = f"{path}.arrows[{i}]"
            _obj(entry, p, ["small", "big", "element"])
            a = (_simplex(entry["small"], f"{p}.small", K), _simplex(entry["big"], f"{p}.big", K))
            if a not in C.base.initial:
                raise ProjectError(p, "not an arrow")
            F_arrow[a] = element_in(G, entry["element"], f"{p}.element")
        return MorphismToGroup(C, G, F_obj, F_arrow)


def load_project(data, source=None):
    return Project(data, source)


def parse_project(path):
    path = Path(path)
    if not path.exists():
        raise ProjectError("$", f"no such file {str(path)!r}")
    text = path.read_text()
    if not text.strip():
        raise ProjectError("$", "empty file")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProjectError("$", f"parse error at line {e.lineno} column {e.colno}: {e.msg}") from None
    return Project(data, str(path))


# ----------------------------------------------------------------------------
# serialization helpers


def to_jsonable(x):
    """Reports use plain JSON: tuples become lists, permutations cycle strings."""
    if isinstance(x, Permutation):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [to_jsonable(y) for y in x]
    if isinstance(x, frozenset):
        return sorted((to_jsonable(y) for y in x), key=repr)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if hasattr(x, "arrows") and hasattr(x, "vertex"):
        return {"arrows": to_jsonable(x.arrows)} if x.arrows else {"vertex": to_jsonable(x.vertex)}
    if isinstance(x, Fraction):
        return str(x)
    return x


def label(simplex):
    """Compact label: ``u,w`` for named simplices, ``repr`` otherwise."""
    if isinstance(simplex, tuple) and all(isinstance(v, str) for v in simplex):
        return ",".join(simplex)
    return repr(simplex)


def dump_report(report):
    return json.dumps(report, sort_keys=True, indent=2)
