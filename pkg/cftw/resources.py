#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
List all benchmark instances shipped with CFTW
"""

from dataclasses import dataclass, fields
from typing import Optional

from cftw.cli.documents import parse_document, parse_tolerances
from cftw.core import ProblemInstance
from cftw.utils import load_instance_document


@dataclass(frozen=True)
class BenchmarkInstance:
    """
    Container for a built-in instance document
    """

    name: str
    description: str
    # known minimizer and optimal value
    solution: Optional[tuple] = None
    value: Optional[float] = None

    def document(self) -> dict:
        """
        Raw JSON document
        """
        return load_instance_document(self.name)

    def load(self) -> ProblemInstance:
        """
        Parsed problem
        """
        return parse_document(self.document())

    def tolerances(self) -> dict:
        """
        Tolerance overrides stored in the document
        """
        return parse_tolerances(self.document())


class IterableDataclass:
    """
    Make dataclass iterable
    """

    def __iter__(self):
        return iter([getattr(self, f.name) for f in fields(self)])

    def __len__(self):
        return len(list(iter(self)))


@dataclass(frozen=True)
class InstancesContainer(IterableDataclass):
    """
    Container for all built-in instances
    """

    EQUILATERAL: BenchmarkInstance = BenchmarkInstance(
        name="equilateral",
        description="Unit equilateral triangle, unit weights, no constraint",
        solution=(0.5, 0.28867513459481287),
        value=1.7320508075688772,
    )
    SQUARE_HALFSPACE: BenchmarkInstance = BenchmarkInstance(
        name="square_halfspace",
        description="Anchors (+-1, 0), (0, +-1), unit weights, halfspace x_2 >= 0.5",
        solution=(0.0, 0.5),
        value=4.23606797749979,
    )
    HEAVY_ANCHOR: BenchmarkInstance = BenchmarkInstance(
        name="heavy_anchor",
        description="Anchors (0, 0), (1, 0), (0, 1), weights (3, 1, 1): anchor 0 is optimal",
        solution=(0.0, 0.0),
        value=2.0,
    )
    ORTHANT_CORNER: BenchmarkInstance = BenchmarkInstance(
        name="orthant_corner",
        description="Anchors (-1, 0), (0, -1), (0, 0) in the nonnegative orthant: the corner is optimal",
        solution=(0.0, 0.0),
        value=2.0,
    )

    def names(self) -> list[str]:
        """
        Names usable in place of an instance file
        """
        return [i.name for i in self]

    def get(self, name: str) -> BenchmarkInstance:
        """
        Instance by name
        """
        for instance in self:
            if instance.name == name:
                return instance
        raise ValueError(f"No built-in instance named `{name}`: choose one from {self.names()}")


Instances = InstancesContainer()
