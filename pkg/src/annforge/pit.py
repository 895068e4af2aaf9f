"""Polynomial identity testing: randomized (Schwartz-Zippel) and
generator-based, plus hit/fool classification against polynomial maps.

Grids are {0, 1, ..., grid_size-1} embedded in the field.  Randomized
verdicts always record the seed and an exact rational failure bound; NonZero
verdicts carry a witness point that is re-checked by exact evaluation.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import config
from .circuit import Circuit, evaluate_circuit, expand, metrics
from .encoding import PolynomialMap, compose_polynomial
from .errors import PointBudgetExceededError, SupportOverflowError
from .fields import Field, FieldValue, PrimeField
from .poly import Polynomial


@dataclass(frozen=True)
class PitVerdict:
    verdict: str  # "zero" | "nonzero"
    trials_run: int
    failure_bound: Fraction  # probability a "zero" verdict is wrong
    witness: tuple[FieldValue, ...] | None = None
    seed: int | None = None
    mode: str = "randomized"

    @property
    def is_zero(self) -> bool:
        return self.verdict == "zero"


def _check_grid(field: Field, grid_size: int) -> None:
    if grid_size < 1:
        raise ValueError("grid size must be >= 1")
    if isinstance(field, PrimeField) and grid_size > field.p:
        raise ValueError(f"grid of size {grid_size} does not fit in GF({field.p})")


def sz_pit(
    circuit: Circuit,
    trials: int = 10,
    grid_size: int | None = None,
    seed: int = 0,
) -> PitVerdict:
    """Schwartz-Zippel identity test: evaluate at uniform random grid points.

    A nonzero degree-d polynomial evaluates to nonzero at a random point of a
    side >= 2d grid with probability >= 1/2 per trial; a "zero" verdict
    carries the exact failure bound (d / grid_size)^trials.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    d = max(metrics(circuit).degree_bound, 1)
    if grid_size is None:
        grid_size = 2 * d + 1
    _check_grid(circuit.field, grid_size)
    if grid_size < 2 * d:
        warnings.warn(
            f"grid size {grid_size} below 2*degree_bound = {2 * d}; "
            "failure bound degrades",
            stacklevel=2,
        )
    f = circuit.field
    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        point = tuple(f.normalize(rng.randrange(grid_size)) for _ in range(circuit.n_inputs))
        value = evaluate_circuit(circuit, point)
        if not f.is_zero(value):
            assert not f.is_zero(evaluate_circuit(circuit, point))  # witness re-check
            return PitVerdict(
                verdict="nonzero", trials_run=trial,
                failure_bound=Fraction(0), witness=point, seed=seed,
            )
    bound = min(Fraction(d, grid_size), Fraction(1)) ** trials
    return PitVerdict(
        verdict="zero", trials_run=trials, failure_bound=bound, seed=seed
    )


def generator_pit(
    circuit: Circuit,
    pmap: PolynomialMap,
    mode: str = "symbolic",
    trials: int = 10,
    seed: int = 0,
    term_budget: int | None = None,
    point_budget: int = config.DEFAULT_POINT_BUDGET,
) -> PitVerdict:
    """Test the composition (circuit o map).

    symbolic: expand the circuit, compose with the map, exact zero test.
    randomized: sample random seed points, push through the map, evaluate.
    deterministic_grid: evaluate the composition on the full grid of side
    deg(circuit)*deg(map)+1 over the seed variables (exact, but the point
    count is guarded by ``point_budget``).
    """
    if circuit.n_inputs > pmap.out_len:
        raise SupportOverflowError(
            f"circuit reads {circuit.n_inputs} variables, map emits {pmap.out_len}"
        )
    f = circuit.field
    if mode == "symbolic":
        composed = compose_polynomial(pmap, expand(circuit, term_budget))
        zero = composed.is_zero()
        return PitVerdict(
            verdict="zero" if zero else "nonzero",
            trials_run=0, failure_bound=Fraction(0), mode=mode,
        )
    if mode == "randomized":
        d = max(metrics(circuit).degree_bound * max(pmap.degree, 1), 1)
        grid = 2 * d + 1
        _check_grid(f, grid)
        rng = random.Random(seed)
        for trial in range(1, trials + 1):
            seed_point = tuple(
                f.normalize(rng.randrange(grid)) for _ in range(pmap.seed_len)
            )
            image = tuple(p.evaluate(seed_point) for p in pmap.outputs)
            value = evaluate_circuit(circuit, image[: circuit.n_inputs])
            if not f.is_zero(value):
                return PitVerdict(
                    verdict="nonzero", trials_run=trial, failure_bound=Fraction(0),
                    witness=seed_point, seed=seed, mode=mode,
                )
        bound = min(Fraction(d, grid), Fraction(1)) ** trials
        return PitVerdict(
            verdict="zero", trials_run=trials, failure_bound=bound,
            seed=seed, mode=mode,
        )
    if mode == "deterministic_grid":
        d = max(metrics(circuit).degree_bound * max(pmap.degree, 1), 1)
        side = d + 1
        total = side ** pmap.seed_len
        if total > point_budget:
            raise PointBudgetExceededError(
                f"{total} grid points exceed budget {point_budget}"
            )
        _check_grid(f, side)
        count = 0
        for raw in itertools.product(range(side), repeat=pmap.seed_len):
            count += 1
            seed_point = tuple(f.normalize(v) for v in raw)
            image = tuple(p.evaluate(seed_point) for p in pmap.outputs)
            value = evaluate_circuit(circuit, image[: circuit.n_inputs])
            if not f.is_zero(value):
                return PitVerdict(
                    verdict="nonzero", trials_run=count, failure_bound=Fraction(0),
                    witness=seed_point, mode=mode,
                )
        # Vanishing on a full (d+1)-side grid forces the composition to zero.
        return PitVerdict(
            verdict="zero", trials_run=count, failure_bound=Fraction(0), mode=mode
        )
    raise ValueError(f"unknown mode {mode!r}")


class HitResult(Enum):
    HIT = "hit"
    FOOLED = "fooled"
    ZERO_INPUT = "zero_input"


def hit_test(pmap: PolynomialMap, p: Polynomial) -> HitResult:
    """Exact classification: a nonzero p is Hit when p o map stays nonzero
    and Fooled when the map annihilates it."""
    if p.is_zero():
        return HitResult.ZERO_INPUT
    return HitResult.FOOLED if compose_polynomial(pmap, p).is_zero() else HitResult.HIT
