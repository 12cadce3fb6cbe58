"""Bundled example documents and typed accessors for the small standard
objects used across the test-suite and the CLI examples."""

from __future__ import annotations

from importlib import resources

from .io import parse_document


def fixture_text(name):
    return (
        resources.files(__package__).joinpath("data").joinpath(name).read_text("utf-8")
    )


def fixture_names():
    root = resources.files(__package__).joinpath("data")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name):
    return parse_document(fixture_text(name))


def z1_pair():
    """One-dimensional zero structure over Q: abelian A, trivial action,
    zero operator."""
    return load_fixture("z1.json").objects["rrb_algebras"]["z1"]


def z1_context():
    """All-zero coefficients over the z1 pair (both cohomology dims 2)."""
    return load_fixture("z1_pair.json").objects["coefficients"]["z1_coeff"]


def afft_pair():
    """Nonsplit operator on the nonabelian two-dimensional algebra with
    its adjoint module."""
    return load_fixture("afft.json").objects["rrb_algebras"]["afft"]


def afft_context():
    """Adjoint coefficients of the afft pair."""
    return load_fixture("afft.json").objects["coefficients"]["afft_adjoint"]


def split_f2():
    """Split extension of the F_2 zero fixture by a one-dimensional
    abelian fiber, with its canonical section."""
    doc = load_fixture("split_f2.json")
    return doc.objects["extensions"]["ext"], doc.objects["sections"]["sec"]
