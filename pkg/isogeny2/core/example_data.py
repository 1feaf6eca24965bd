"""Worked example over F_56311: a beta-isogeny between Hilbert-normalized curves, beta of norm 11 and trace 7.

See Also
--------
isogeny2.core.random : random curves and points

Examples
--------
>>> from isogeny2.core.example_data import example_data
>>> example_data
Available example data:
-----------------------
example_data.field          : The prime field F_56311.
example_data.alpha_field    : The quadratic extension F_56311[alpha], alpha^2 + alpha + 2 = 0.
example_data.gundlach       : Gundlach invariants of the source.
example_data.gundlach_prime : Gundlach invariants of the target.
example_data.curve          : Hilbert-normalized source curve C.
example_data.curve_prime    : Hilbert-normalized target curve C'.
example_data.change         : Change of variables bringing the Weierstrass point (36392, 0) of C to (0, 0).
example_data.standard_curve : C with a Weierstrass point at (0, 0) and linear coefficient 1.
example_data.candidates     : The four diagonal tangent matrices allowed by the modular equations.
example_data.tangent        : Tangent matrix of the isogeny with source the standard model.
example_data.s              : First symmetric function s(u) = x1 + x2 of the isogeny.
example_data.p              : Second symmetric function p(u) = x1 x2 of the isogeny.
example_data.run_config     : Configuration of the run with supplied tangent matrix.
example_data.files          : A dict of basenames to file paths of packaged data.

>>> example_data.curve
v^2 = 13425*u^6 + 34724*u^5 + 102*u^3 + 54150*u + 11111

"""

import logging
import typing
from pathlib import Path

from isogeny2.core import linalg
from isogeny2.data import data_path

if typing.TYPE_CHECKING:
    from isogeny2.curves import CurveModel
    from isogeny2.ext.rm_q5 import GundlachPoint
    from isogeny2.field import ExtField, PrimeField, Raw
    from isogeny2.pipeline import RunConfig
    from isogeny2.series import RationalFraction

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

P = 56311
ALPHA_MINPOLY = (2, 1)
CURVE = [11111, 54150, 0, 102, 0, 34724, 13425]
CURVE_PRIME = [40502, 24699, 0, 40476, 0, 35850, 47601]
STANDARD_CURVE = [0, 1, 14713, 34825, 16387, 7399, 33461]
CHANGE = [[44206, 0], [18649, 7615]]

# diagonal entries as (constant, alpha) coefficients
CANDIDATE_DIAGONALS = {
    "beta,+": ([19466, 38932], [26659, 53318]),
    "beta,-": ([19466, 38932], [P - 26659, P - 53318]),
    "beta_bar,+": ([53481, 50651], [5538, 11076]),
    "beta_bar,-": ([53481, 50651], [P - 5538, P - 11076]),
}
ISOGENY_TAG = "beta_bar,+"

S_NUMERATOR = [11726, 49419, 22804, 9527, 17196, 40618, 50255]
P_NUMERATOR = [7231, 32206, 9325, 3347, 52568, 9569, 35444]
DENOMINATOR = [7238, 14612, 18069, 41828, 22913, 40883, 1]

DATA_FILES = ("identity_siegel.txt", "identity_hilbert_q5.txt", "cleared_hilbert_q5.txt")


class ExampleData:
    def __repr__(self) -> str:
        methods_info = "Available example data:\n-----------------------\n"
        items = [
            (name, prop)
            for name, prop in self.__class__.__dict__.items()
            if isinstance(prop, property) and not name.startswith("_")
        ]
        max_name_len = max(len(name) for name, _ in items)
        for name, prop in items:
            doc_line = prop.fget.__doc__.split("\n")[0] if prop.fget.__doc__ else ""
            methods_info += f"example_data.{name:<{max_name_len}} : {doc_line}\n"
        return methods_info.strip()

    @property
    def field(self) -> "PrimeField":
        """The prime field F_56311."""
        from isogeny2.field import PrimeField

        return PrimeField(P)

    @property
    def alpha_field(self) -> "ExtField":
        """The quadratic extension F_56311[alpha], alpha^2 + alpha + 2 = 0."""
        from isogeny2.field import adjoin_sqrt

        return adjoin_sqrt(self.field, minimal_poly=ALPHA_MINPOLY)[0]

    @property
    def gundlach(self) -> "GundlachPoint":
        """Gundlach invariants of the source."""
        from isogeny2.ext.rm_q5 import GundlachPoint

        return GundlachPoint.from_ints(self.field, 23, 56260)

    @property
    def gundlach_prime(self) -> "GundlachPoint":
        """Gundlach invariants of the target."""
        from isogeny2.ext.rm_q5 import GundlachPoint

        return GundlachPoint.from_ints(self.field, 8, 36073)

    @property
    def curve(self) -> "CurveModel":
        """Hilbert-normalized source curve C."""
        from isogeny2.curves import CurveModel

        return CurveModel.from_ints(self.field, CURVE)

    @property
    def curve_prime(self) -> "CurveModel":
        """Hilbert-normalized target curve C'."""
        from isogeny2.curves import CurveModel

        return CurveModel.from_ints(self.field, CURVE_PRIME)

    @property
    def change(self) -> "Raw":
        """Change of variables bringing the Weierstrass point (36392, 0) of C to (0, 0).

        >>> from isogeny2.curves import gl2_transform
        >>> gl2_transform(example_data.curve, example_data.change)[0] == example_data.standard_curve
        True

        """
        return linalg.matrix(self.field, CHANGE)

    @property
    def standard_curve(self) -> "CurveModel":
        """C with a Weierstrass point at (0, 0) and linear coefficient 1."""
        from isogeny2.curves import CurveModel

        return CurveModel.from_ints(self.field, STANDARD_CURVE)

    @property
    def candidates(self) -> dict[str, "Raw"]:
        """The four diagonal tangent matrices allowed by the modular equations."""
        k = self.alpha_field
        return {tag: linalg.diagonal(k, [k.raw(d) for d in pair]) for tag, pair in CANDIDATE_DIAGONALS.items()}

    @property
    def tangent(self) -> "Raw":
        """Tangent matrix of the isogeny with source the standard model.

        It is the correct candidate times the transpose of :attr:`change`.
        """
        k = self.alpha_field
        factor = k.embed(linalg.transpose(self.change), self.field)
        return linalg.matmul(k, self.candidates[ISOGENY_TAG], factor)

    @property
    def s(self) -> "RationalFraction":
        """First symmetric function s(u) = x1 + x2 of the isogeny."""
        from isogeny2.series import Poly, RationalFraction

        k = self.field
        return RationalFraction(Poly.from_ints(k, S_NUMERATOR), Poly.from_ints(k, DENOMINATOR))

    @property
    def p(self) -> "RationalFraction":
        """Second symmetric function p(u) = x1 x2 of the isogeny."""
        from isogeny2.series import Poly, RationalFraction

        k = self.field
        return RationalFraction(Poly.from_ints(k, P_NUMERATOR), Poly.from_ints(k, DENOMINATOR))

    @property
    def run_config(self) -> "RunConfig":
        """Configuration of the run with supplied tangent matrix."""
        from isogeny2.pipeline import RunConfig

        tangent = [[[int(c) for c in x] for x in row] for row in self.tangent]
        return RunConfig(
            p=P,
            path="hilbert-q5",
            curve=STANDARD_CURVE,
            curve_prime=CURVE_PRIME,
            beta_norm=11,
            beta_trace=7,
            tangent=tangent,  # type: ignore[arg-type]
            tangent_minpoly=list(ALPHA_MINPOLY),
            seed=0,
        )

    @property
    def files(self) -> dict[str, Path]:
        """A dict of basenames to file paths of packaged data."""
        return {name: data_path(name) for name in DATA_FILES}


example_data = ExampleData()
