"""Instance files: one group + field + optional representation/subgroup per
TOML file, with explicit computation limits.

Schema (keys in any order; matrices are nested arrays of integers or
"num/den" strings; permutation images are 0-indexed):

    field = "Q" | "F<p>"

    [group]
    kind = "presentation" | "permutation"
    generators = ["a", "b"]
    relators = ["a^2 b^-3"]          # presentation only
    [group.images]                    # permutation only
    a = [1, 0, 2]

    [representation]                  # optional; default trivial, dim 1
    preset = "trivial" | "regular"    # or explicit:
    dimension = 2
    [representation.matrices]
    a = [[1, 1], [0, 1]]

    [subgroup]                        # optional
    generators = ["a^2"]

    [limits]                          # optional
    q_max = 3
    p_max = 2
    trunc = 5
    enumeration_cap = 512
    memory_cap = 2000000
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .fields import FieldSpec
from .groupalg import DEFAULT_ENUMERATION_CAP, enumerate_group
from .invariants import Representation
from .linalg import Matrix
from .words import GroupPresentation, WordSyntaxError


class InstanceError(ValueError):
    """Invalid instance file (CLI exit code 2)."""


@dataclass(frozen=True)
class Limits:
    q_max: int = 3
    p_max: int = 2
    trunc: int | None = None
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    memory_cap: int | None = None

    def to_dict(self) -> dict:
        out = {"q_max": self.q_max, "p_max": self.p_max,
               "enumeration_cap": self.enumeration_cap}
        if self.trunc is not None:
            out["trunc"] = self.trunc
        if self.memory_cap is not None:
            out["memory_cap"] = self.memory_cap
        return out


@dataclass(frozen=True)
class RepresentationSpec:
    preset: str | None = None            # "trivial" | "regular" | None
    dimension: int | None = None
    matrices: tuple | None = None        # ((name, rows), ...) in generator order

    def to_dict(self) -> dict:
        out = {}
        if self.preset:
            out["preset"] = self.preset
        if self.dimension is not None:
            out["dimension"] = self.dimension
        if self.matrices is not None:
            out["matrices"] = {name: [list(r) for r in rows]
                               for name, rows in self.matrices}
        return out


@dataclass(frozen=True)
class InstanceSpec:
    name: str
    field: FieldSpec
    kind: str                            # "presentation" | "permutation"
    generators: tuple
    relators: tuple = ()
    images: tuple = ()                   # permutation images, generator order
    representation: RepresentationSpec = dc_field(default_factory=RepresentationSpec)
    subgroup: tuple | None = None        # generator words
    limits: Limits = dc_field(default_factory=Limits)

    def to_dict(self) -> dict:
        group: dict = {"kind": self.kind, "generators": list(self.generators)}
        if self.kind == "presentation":
            group["relators"] = list(self.relators)
        else:
            group["images"] = {name: list(img)
                               for name, img in zip(self.generators, self.images)}
        out = {"field": self.field.tag, "group": group}
        rep = self.representation.to_dict()
        if rep:
            out["representation"] = rep
        if self.subgroup is not None:
            out["subgroup"] = {"generators": list(self.subgroup)}
        out["limits"] = self.limits.to_dict()
        return out


def _require(cond, message):
    if not cond:
        raise InstanceError(message)


def _get_int(table, key, default=None, minimum=None):
    if key not in table:
        if default is None:
            raise InstanceError(f"missing integer key {key!r}")
        return default
    v = table[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise InstanceError(f"{key!r} must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise InstanceError(f"{key!r} must be >= {minimum}, got {v}")
    return v


def parse_instance(data: dict, name: str = "instance") -> InstanceSpec:
    if not isinstance(data, dict):
        raise InstanceError("instance must be a table")
    unknown = set(data) - {"field", "group", "representation", "subgroup", "limits"}
    _require(not unknown, f"unknown top-level keys: {sorted(unknown)}")
    _require("field" in data, 'missing "field" tag ("Q" or "F<p>")')
    try:
        fieldspec = FieldSpec.parse(str(data["field"]))
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc

    group = data.get("group")
    _require(isinstance(group, dict), 'missing [group] table')
    unknown = set(group) - {"kind", "generators", "relators", "images"}
    _require(not unknown, f"unknown group keys: {sorted(unknown)}")
    kind = group.get("kind")
    _require(kind in ("presentation", "permutation"),
             f'group.kind must be "presentation" or "permutation", got {kind!r}')
    gens = group.get("generators")
    _require(isinstance(gens, list) and gens and
             all(isinstance(g, str) for g in gens),
             "group.generators must be a non-empty list of names")
    generators = tuple(gens)
    _require(len(set(generators)) == len(generators),
             "generator names must be distinct")

    relators: tuple = ()
    images: tuple = ()
    if kind == "presentation":
        _require("images" not in group, "presentation groups take no images")
        rels = group.get("relators", [])
        _require(isinstance(rels, list) and all(isinstance(r, str) for r in rels),
                 "group.relators must be a list of words")
        relators = tuple(rels)
        try:
            GroupPresentation(generators, relators)
        except (ValueError, WordSyntaxError) as exc:
            raise InstanceError(f"bad presentation: {exc}") from exc
    else:
        _require("relators" not in group, "permutation groups take no relators")
        imgs = group.get("images")
        _require(isinstance(imgs, dict), "missing [group.images] table")
        missing = [g for g in generators if g not in imgs]
        _require(not missing, f"missing images for generators: {missing}")
        extra = set(imgs) - set(generators)
        _require(not extra, f"images for unknown generators: {sorted(extra)}")
        parsed = []
        for g in generators:
            img = imgs[g]
            _require(isinstance(img, list) and
                     all(isinstance(x, int) and not isinstance(x, bool) for x in img),
                     f"images of {g!r} must be a list of integers")
            _require(sorted(img) == list(range(len(img))),
                     f"images of {g!r} are not a permutation of 0..{len(img) - 1}")
            parsed.append(tuple(img))
        degrees = {len(p) for p in parsed}
        _require(len(degrees) == 1, "all permutations must move the same set")
        images = tuple(parsed)

    rep_spec = RepresentationSpec()
    if "representation" in data:
        rep = data["representation"]
        _require(isinstance(rep, dict), "[representation] must be a table")
        unknown = set(rep) - {"preset", "dimension", "matrices"}
        _require(not unknown, f"unknown representation keys: {sorted(unknown)}")
        preset = rep.get("preset")
        if preset is not None:
            _require(preset in ("trivial", "regular"),
                     f'representation.preset must be "trivial" or "regular", got {preset!r}')
            _require("matrices" not in rep, "preset excludes explicit matrices")
            dim = None
            if preset == "trivial":
                dim = _get_int(rep, "dimension", default=1, minimum=1)
            else:
                _require("dimension" not in rep,
                         "the regular representation fixes its own dimension")
                _require(kind == "permutation",
                         "the regular representation needs a finite group")
            rep_spec = RepresentationSpec(preset=preset, dimension=dim)
        else:
            dim = _get_int(rep, "dimension", minimum=1)
            mats = rep.get("matrices")
            _require(isinstance(mats, dict), "missing [representation.matrices]")
            missing = [g for g in generators if g not in mats]
            _require(not missing, f"missing matrices for generators: {missing}")
            extra = set(mats) - set(generators)
            _require(not extra, f"matrices for unknown generators: {sorted(extra)}")
            entries = []
            for g in generators:
                rows = mats[g]
                _require(isinstance(rows, list) and len(rows) == dim and
                         all(isinstance(r, list) and len(r) == dim for r in rows),
                         f"matrix for {g!r} must be {dim}x{dim}")
                norm_rows = []
                for r in rows:
                    norm = []
                    for x in r:
                        _require(isinstance(x, (int, str)) and not isinstance(x, bool),
                                 f"matrix entries are integers or strings, got {x!r}")
                        norm.append(x)
                    norm_rows.append(tuple(norm))
                entries.append((g, tuple(norm_rows)))
            rep_spec = RepresentationSpec(dimension=dim, matrices=tuple(entries))

    subgroup = None
    if "subgroup" in data:
        sub = data["subgroup"]
        _require(isinstance(sub, dict), "[subgroup] must be a table")
        words_ = sub.get("generators")
        _require(isinstance(words_, list) and
                 all(isinstance(w, str) for w in words_),
                 "subgroup.generators must be a list of words")
        subgroup = tuple(words_)

    limits = Limits()
    if "limits" in data:
        lim = data["limits"]
        _require(isinstance(lim, dict), "[limits] must be a table")
        unknown = set(lim) - {"q_max", "p_max", "trunc", "enumeration_cap", "memory_cap"}
        _require(not unknown, f"unknown limit keys: {sorted(unknown)}")
        limits = Limits(
            q_max=_get_int(lim, "q_max", default=3, minimum=0),
            p_max=_get_int(lim, "p_max", default=2, minimum=0),
            trunc=_get_int(lim, "trunc", default=-1, minimum=0) if "trunc" in lim else None,
            enumeration_cap=_get_int(lim, "enumeration_cap",
                                     default=DEFAULT_ENUMERATION_CAP, minimum=1),
            memory_cap=_get_int(lim, "memory_cap", default=-1, minimum=1)
            if "memory_cap" in lim else None,
        )
    return InstanceSpec(name=name, field=fieldspec, kind=kind,
                        generators=generators, relators=relators, images=images,
                        representation=rep_spec, subgroup=subgroup, limits=limits)


def load_instance(path: str | Path) -> InstanceSpec:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InstanceError(f"{path}: {exc}") from exc
    return parse_instance(data, name=path.stem)


def loads_instance(text: str, name: str = "instance") -> InstanceSpec:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InstanceError(str(exc)) from exc
    return parse_instance(data, name=name)


class BuiltInstance:
    """Realized instance: the group objects plus the representation."""

    __slots__ = ("spec", "presentation", "group", "rep")

    def __init__(self, spec: InstanceSpec, presentation, group, rep):
        self.spec = spec
        self.presentation = presentation
        self.group = group
        self.rep = rep

    @property
    def field(self) -> FieldSpec:
        return self.spec.field

    @property
    def is_finite_group(self) -> bool:
        return self.group is not None


def build_instance(spec: InstanceSpec) -> BuiltInstance:
    """Realize the spec; all validation failures become InstanceError."""
    f = spec.field
    presentation = None
    group = None
    try:
        if spec.kind == "presentation":
            presentation = GroupPresentation(spec.generators, spec.relators)
        else:
            group = enumerate_group(spec.images, gen_names=spec.generators,
                                    cap=spec.limits.enumeration_cap)
        rspec = spec.representation
        if rspec.preset == "regular":
            rep = Representation.regular(group, f)
        elif rspec.matrices is not None:
            mats = [Matrix.from_values(f, rows) for _, rows in rspec.matrices]
            rep = Representation(f, mats, presentation=presentation, group=group)
        else:
            dim = rspec.dimension if rspec.dimension is not None else 1
            rep = Representation.trivial(f, dim, presentation=presentation,
                                         group=group)
        if spec.subgroup is not None:
            if presentation is not None:
                for w in spec.subgroup:
                    presentation.parse(w)
            else:
                from .words import parse_word
                for w in spec.subgroup:
                    parse_word(w, group.gen_names)
    except InstanceError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(str(exc)) from exc
    return BuiltInstance(spec, presentation, group, rep)
