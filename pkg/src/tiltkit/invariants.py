"""Derived-equivalence invariants of finite-dimensional algebras.

Equal numbers of simples, equal ``|det C|`` of the Cartan matrix and equal
center dimensions are necessary for derived equivalence.  The Smith form
of the Cartan matrix is reported but not compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .exactla import determinant
from .quivalg import FDAlgebra, cartan_matrix, center_dimension, self_injectivity


def smith_form(m: list) -> list:
    """Diagonal of the Smith normal form of an integer matrix."""
    if not m:
        return []
    s = smith_normal_form(Matrix(m), domain=ZZ)
    return [abs(int(s[i, i])) for i in range(min(s.shape))]


@dataclass
class InvariantTable:
    name: str
    dimension: int
    simples: int
    cartan: list
    cartan_det_abs: int
    smith_form: list
    center_dim: int
    self_injective: bool
    nakayama_permutation: Optional[dict]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "simples": self.simples,
            "cartan": self.cartan,
            "cartan_det_abs": self.cartan_det_abs,
            "smith_form": self.smith_form,
            "center_dim": self.center_dim,
            "self_injective": self.self_injective,
            "nakayama_permutation": self.nakayama_permutation,
        }


def invariant_table(a: FDAlgebra) -> InvariantTable:
    c = cartan_matrix(a)
    cert = self_injectivity(a)
    return InvariantTable(
        name=a.name,
        dimension=a.dim,
        simples=a.nvertices,
        cartan=c,
        cartan_det_abs=abs(int(determinant(c))) if c else 1,
        smith_form=smith_form(c),
        center_dim=center_dimension(a),
        self_injective=cert.self_injective,
        nakayama_permutation=cert.nakayama_permutation,
    )


@dataclass
class InvariantComparison:
    table_a: InvariantTable
    table_b: InvariantTable

    @property
    def checks(self) -> dict:
        a, b = self.table_a, self.table_b
        return {
            "simples": a.simples == b.simples,
            "cartan_det_abs": a.cartan_det_abs == b.cartan_det_abs,
            "center_dim": a.center_dim == b.center_dim,
        }

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "table_a": self.table_a.to_json(),
            "table_b": self.table_b.to_json(),
            "checks": self.checks,
            "smith_forms_equal": self.table_a.smith_form == self.table_b.smith_form,
            "consistent": self.consistent,
        }


def compare_invariants(a: FDAlgebra, b: FDAlgebra) -> InvariantComparison:
    """Necessary conditions for ``D(a) ≃ D(b)``.  ``consistent = False``
    refutes a derived equivalence; ``True`` is only consistency."""
    return InvariantComparison(invariant_table(a), invariant_table(b))
