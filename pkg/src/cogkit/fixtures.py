"""The built-in fixture corpus.

SEG      edge {u, w}; G_u = C2, G_w = C3, trivial edge group.
TRI3     triangle; C2 at vertex v0, every other group trivial.
PATH-ACT C2 swapping the ends of the path x0 - x1 - x2.
HEX      C6 rotating the 12-cycle (hexagon with edge midpoints) by two steps.
S3-TRI   S3 permuting the corners of a triangle, on its barycentric subdivision.
TWIST    C6 rotating the coned-off hexagon, induced with the adversarial
         policy, which yields non-trivial twisting elements.
"""

from __future__ import annotations

from functools import lru_cache

from .complexes import ComplexOfGroups, MorphismToGroup, SimplicialAction, induce_from_action, trivial_cog
from .groups import Permutation, cyclic_group, make_hom, symmetric_group, trivial_group, trivial_hom
from .scwol import scwol_of_complex
from .simplicial import barycentric_subdivision, build_complex


def seg_complex():
    return build_complex([("u", "w")])


def triangle_complex():
    return build_complex([("v0", "v1", "v2")])


def path_complex():
    return build_complex([("x0", "x1"), ("x1", "x2")])


def cycle_complex(n, prefix="h"):
    names = [f"{prefix}{i:02d}" for i in range(n)]
    return build_complex([(names[i], names[(i + 1) % n]) for i in range(n)]), names


def hexagon_disk_complex():
    rim = [f"p{i}" for i in range(6)]
    return build_complex([("c", rim[i], rim[(i + 1) % 6]) for i in range(6)]), rim


@lru_cache(maxsize=None)
def c2():
    return cyclic_group(2)


@lru_cache(maxsize=None)
def c3():
    return cyclic_group(3)


@lru_cache(maxsize=None)
def c6():
    return cyclic_group(6)


@lru_cache(maxsize=None)
def s3():
    return symmetric_group(3)


def seg_cog():
    Y = seg_complex()
    S = scwol_of_complex(Y)
    one = trivial_group(1)
    groups = {("u",): c2(), ("w",): c3(), ("u", "w"): one}
    psi = {a: trivial_hom(one, groups[S.t(a)]) for a in S.arrows}
    return ComplexOfGroups(S, groups, psi, complex=Y)


def seg_c6_witness(C=None):
    """SEG -> C6 sending the generators of C2 and C3 to g^3 and g^2."""
    C = C or seg_cog()
    G = c6()
    g = G.generators[0]
    F = {
        ("u",): make_hom(C.group(("u",)), G, [g * g * g]),
        ("w",): make_hom(C.group(("w",)), G, [g * g]),
        ("u", "w"): trivial_hom(C.group(("u", "w")), G),
    }
    return MorphismToGroup(C, G, F, {})


def tri3_cog():
    Y = triangle_complex()
    S = scwol_of_complex(Y)
    one = trivial_group(1)
    groups = {s: (c2() if s == ("v0",) else one) for s in Y.simplices}
    psi = {a: trivial_hom(groups[S.i(a)], groups[S.t(a)]) for a in S.arrows}
    return ComplexOfGroups(S, groups, psi, complex=Y)


def path_action():
    G = c2()
    K = path_complex()
    return SimplicialAction.from_generators(G, K, [{"x0": "x2", "x1": "x1", "x2": "x0"}])


def hex_action(step=2):
    """C6 acting on the 12-cycle through rotation by ``step`` positions per generator."""
    G = c6()
    K, names = cycle_complex(12)
    rot = {names[i]: names[(i + step) % 12] for i in range(12)}
    return SimplicialAction.from_generators(G, K, [rot])


def s3_triangle_action():
    """S3 on the barycentric subdivision of the triangle (v1, v2, v3)."""
    G = s3()
    T = build_complex([("v1", "v2", "v3")])
    maps = []
    for gen in G.generators:
        maps.append({f"v{i + 1}": f"v{gen(i) + 1}" for i in range(3)})
    return SimplicialAction.from_generators(G, T, maps).subdivide()


def s3_triangle_raw_action():
    """S3 on the triangle itself (has inversions; induction subdivides)."""
    G = s3()
    T = build_complex([("v1", "v2", "v3")])
    maps = [{f"v{i + 1}": f"v{gen(i) + 1}" for i in range(3)} for gen in G.generators]
    return SimplicialAction.from_generators(G, T, maps)


def hexagon_disk_action():
    G = c6()
    K, rim = hexagon_disk_complex()
    rot = {"c": "c"}
    rot.update({rim[i]: rim[(i + 1) % 6] for i in range(6)})
    return SimplicialAction.from_generators(G, K, [rot])


def cone_s3_action():
    """S3 fixing a cone point over the subdivided triangle (3-dimensional)."""
    base = s3_triangle_action()
    apex = ("apex",)  # same shape as the subdivision's vertices
    cone = build_complex([tuple(f) + (apex,) for f in base.complex.facets()])
    table = {}
    for g, m in base.vertex_action.items():
        table[g] = dict(m)
        table[g][apex] = apex
    return SimplicialAction(base.group, cone, table)


@lru_cache(maxsize=None)
def twist_induced():
    return induce_from_action(hexagon_disk_action(), "adversarial")


def twist_cog():
    return twist_induced()[0]


def fixture_actions():
    return {
        "PATH-ACT": path_action(),
        "HEX": hex_action(),
        "S3-TRI": s3_triangle_action(),
    }


def fixture_complexes():
    return {
        "seg": seg_complex(),
        "triangle": triangle_complex(),
        "path": path_complex(),
        "hexagon": cycle_complex(12)[0],
        "hexagon-disk": hexagon_disk_complex()[0],
        "subdivided-triangle": barycentric_subdivision(triangle_complex()),
    }


def fixture_cogs():
    cogs = {"SEG": seg_cog(), "TRI3": tri3_cog(), "TWIST": twist_cog()}
    for name, Y in fixture_complexes().items():
        cogs[f"trivial:{name}"] = trivial_cog(Y)
    return cogs


POLICIES = ("canonical", "adversarial", "random:7")


# ---------------------------------------------------------------- project files

_GROUPS = {
    "1": {"trivial": True},
    "C2": {"cyclic": 2},
    "C3": {"cyclic": 3},
    "C6": {"cyclic": 6},
    "S3": {"degree": 3, "generators": ["(1 2)", "(1 2 3)"]},
}


def _vertex_name(v):
    return v if isinstance(v, str) else "+".join(_vertex_name(x) for x in v)


def _complex_json(K):
    return {"facets": [[_vertex_name(v) for v in f] for f in K.facets()]}


def _groups(*names):
    return {n: _GROUPS[n] for n in names}


def fixture_projects():
    """The shipped corpus as project documents, keyed by file name."""
    seg = {
        "schema_version": 1,
        "groups": _groups("1", "C2", "C3", "C6"),
        "complexes": {"seg": _complex_json(seg_complex())},
        "cogs": {
            "SEG": {
                "complex": "seg",
                "local_groups": [
                    {"simplex": ["u"], "group": "C2"},
                    {"simplex": ["w"], "group": "C3"},
                    {"simplex": ["u", "w"], "group": "1"},
                ],
            }
        },
        "witnesses": {
            "c6-witness": {
                "cog": "SEG",
                "group": "C6",
                "local": [
                    {"simplex": ["u"], "images": ["(1 4)(2 5)(3 6)"]},
                    {"simplex": ["w"], "images": ["(1 3 5)(2 4 6)"]},
                ],
            }
        },
    }
    tri3 = {
        "schema_version": 1,
        "groups": _groups("1", "C2"),
        "complexes": {"triangle": _complex_json(triangle_complex())},
        "cogs": {
            "TRI3": {
                "complex": "triangle",
                "default_group": "1",
                "local_groups": [{"simplex": ["v0"], "group": "C2"}],
            }
        },
        "witnesses": {"c2-witness": {"cog": "TRI3", "group": "C2", "local": [{"simplex": ["v0"], "images": ["(1 2)"]}]}},
    }
    path_act = {
        "schema_version": 1,
        "groups": _groups("C2"),
        "complexes": {"path": _complex_json(path_complex())},
        "actions": {
            "path-act": {"group": "C2", "complex": "path", "generators": [{"x0": "x2", "x1": "x1", "x2": "x0"}]}
        },
        "cogs": {"PATH-ACT": {"induced_from": "path-act", "policy": "canonical"}},
        "witnesses": {"canonical": {"cog": "PATH-ACT", "group": "C2"}},
    }
    K, names = cycle_complex(12)
    hexa = {
        "schema_version": 1,
        "groups": _groups("C6"),
        "complexes": {"hexagon": _complex_json(K)},
        "actions": {
            "hex": {
                "group": "C6",
                "complex": "hexagon",
                "generators": [{names[i]: names[(i + 2) % 12] for i in range(12)}],
            }
        },
        "cogs": {"HEX": {"induced_from": "hex", "policy": "canonical"}},
        "witnesses": {"canonical": {"cog": "HEX", "group": "C6"}},
    }
    s3tri = {
        "schema_version": 1,
        "groups": _groups("S3"),
        "complexes": {"triangle": {"facets": [["v1", "v2", "v3"]]}},
        "actions": {
            "s3-tri": {
                "group": "S3",
                "complex": "triangle",
                "generators": [{"v1": "v2", "v2": "v1", "v3": "v3"}, {"v1": "v2", "v2": "v3", "v3": "v1"}],
                "subdivisions": 1,
            }
        },
        "cogs": {"S3-TRI": {"induced_from": "s3-tri", "policy": "canonical"}},
        "witnesses": {"canonical": {"cog": "S3-TRI", "group": "S3"}},
    }
    D, rim = hexagon_disk_complex()
    rot = {"c": "c"}
    rot.update({rim[i]: rim[(i + 1) % 6] for i in range(6)})
    twist = {
        "schema_version": 1,
        "groups": _groups("C6"),
        "complexes": {"hexagon-disk": _complex_json(D)},
        "actions": {"hex-disk": {"group": "C6", "complex": "hexagon-disk", "generators": [rot]}},
        "cogs": {"TWIST": {"induced_from": "hex-disk", "policy": "adversarial", "expect_nontrivial_twist": True}},
        "witnesses": {"canonical": {"cog": "TWIST", "group": "C6"}},
    }
    trivial = {
        "schema_version": 1,
        "groups": _groups("1"),
        "complexes": {name: _complex_json(Y) for name, Y in fixture_complexes().items()},
        "cogs": {f"trivial:{name}": {"trivial_over": name} for name in fixture_complexes()},
        "witnesses": {f"trivial:{name}": {"cog": f"trivial:{name}", "group": "1"} for name in fixture_complexes()},
    }
    return {
        "seg.json": seg,
        "tri3.json": tri3,
        "path-act.json": path_act,
        "hex.json": hexa,
        "s3-tri.json": s3tri,
        "twist.json": twist,
        "trivial.json": trivial,
    }
