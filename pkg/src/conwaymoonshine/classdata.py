"""Registry of the fixed-point-free Conway classes and their twisted data.

One row per class: names in the full group and its simple quotient, the
Frame shape, the tabulated spinor super trace, the invariance-group label
of the twisted trace function, and the matching monster class.  The table
ships as a checked-in CSV (data/tsgtw_table.csv) parsed at first use; every
row is validated on load (degree 24, genuine eigenvalue multiset, no fixed
points).

Untwisted-side constants for the partner -g are never tabulated here; they
are derived: the Frame shape by negation, the scalar by solving the
five-term eta identity (moonshine.solve_c_neg), cross-checked against the
spinor closed form.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import NotFoundError, ValidationError
from .frameshape import FrameShape, parse as parse_shape


@dataclass(frozen=True)
class ConjugacyClassRecord:
    co0_name: str
    co1_name: str
    frame_shape: FrameShape
    c_hat_g: int
    gamma_tw_label: str
    monster_class: str

    def chi(self) -> int:
        return self.frame_shape.chi()

    def to_json(self) -> dict:
        return {
            "co0": self.co0_name,
            "co1": self.co1_name,
            "frame_shape": str(self.frame_shape),
            "c_hat_g": self.c_hat_g,
            "label": self.gamma_tw_label,
            "monster": self.monster_class,
        }


@lru_cache(maxsize=1)
def registry() -> tuple:
    """All table rows, in table order, validated."""
    text = resources.files("conwaymoonshine.data").joinpath("tsgtw_table.csv").read_text()
    rows = []
    for raw in csv.DictReader(text.splitlines()):
        shape = parse_shape(raw["frame_shape"])
        if shape.fixed_points() != 0:
            raise ValidationError(
                "registry row %s is not fixed-point-free" % raw["co0"]
            )
        rows.append(
            ConjugacyClassRecord(
                co0_name=raw["co0"],
                co1_name=raw["co1"],
                frame_shape=shape,
                c_hat_g=int(raw["c_hat_g"]),
                gamma_tw_label=raw["label"],
                monster_class=raw["monster"],
            )
        )
    if len({r.co0_name for r in rows}) != len(rows):
        raise ValidationError("duplicate class names in registry")
    return tuple(rows)


def lookup(name: str) -> ConjugacyClassRecord:
    """Row by class name in the full Conway group (e.g. "6C", "46AB")."""
    for rec in registry():
        if rec.co0_name == name:
            return rec
    near = [r.co0_name for r in registry() if r.co0_name.rstrip("ABCDEFGHIJKLR") == name.rstrip("ABCDEFGHIJKLR")]
    raise NotFoundError(name, near[:6])


def derived_partner(rec: ConjugacyClassRecord, order=25):
    """Frame shape and super-trace scalar for -g, with provenance.

    The shape is negate(pi_g); the scalar is solved from the five-term eta
    identity and is therefore pinned by ~order*48 coefficient constraints.
    Results are cached per class.
    """
    return _derived_partner_cached(rec.co0_name, int(order))


@lru_cache(maxsize=None)
def _derived_partner_cached(co0_name, order):
    from .moonshine import solve_c_neg  # local import: moonshine builds on this module

    rec = lookup(co0_name)
    scalar, report = solve_c_neg(rec, order=order)
    if not report.passed:
        raise ValidationError(
            "eta identity residual nonzero while deriving partner of %s" % co0_name
        )
    return rec.frame_shape.negate(), scalar
