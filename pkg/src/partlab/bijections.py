"""Constructive weight-preserving bijections between partition classes.

Each map records a step-by-step trace so the CLI can print the intermediate
partitions.  Domain validation is strict by default; ``check=False`` skips it
for exhaustive sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import families
from .errors import DomainError, PartlabError
from .partition import Partition, format_partition


class LemmaViolation(PartlabError, RuntimeError):
    """Internal divisibility guarantee failed; signals a defect, not bad input."""


@dataclass(frozen=True)
class TraceStep:
    label: str
    value: Union[Partition, str]


@dataclass(frozen=True)
class BijectionTrace:
    input: Partition
    output: Partition
    steps: tuple[TraceStep, ...]


def _trace(input_partition: Partition, output: Partition, steps: list[TraceStep]) -> BijectionTrace:
    full = [TraceStep("input", input_partition), *steps, TraceStep("output", output)]
    return BijectionTrace(input_partition, output, tuple(full))


def _strip_power(x: int, t: int) -> tuple[int, int]:
    """Write x = t^a * b with t not dividing b; returns (b, t^a)."""
    scale = 1
    while x % t == 0:
        x //= t
        scale *= t
    return x, scale


def glaisher(t: int, partition: Partition) -> Partition:
    """Split every part divisible by t: a part t^a*b with multiplicity m
    contributes t^a*m to the multiplicity of b.  Requires every multiplicity
    <= t-1; the image has no part divisible by t."""
    if t < 2:
        raise DomainError(f"glaisher map needs t >= 2, got {t}")
    out: dict[int, int] = {}
    for part, mult in partition.pairs:
        if mult > t - 1:
            raise DomainError(f"part {part} has multiplicity {mult} > {t - 1}")
        base, scale = _strip_power(part, t)
        out[base] = out.get(base, 0) + scale * mult
    return Partition._raw(tuple(sorted(out.items(), reverse=True)), partition.weight)


def glaisher_inv(t: int, partition: Partition) -> Partition:
    """Inverse splitting: a part b with multiplicity m = sum of m_i t^i in
    base t yields parts t^i*b with multiplicity m_i.  Requires no part
    divisible by t; the image has every multiplicity <= t-1."""
    if t < 2:
        raise DomainError(f"glaisher map needs t >= 2, got {t}")
    out: dict[int, int] = {}
    for part, mult in partition.pairs:
        if part % t == 0:
            raise DomainError(f"part {part} is divisible by {t}")
        scale = 1
        while mult:
            digit = mult % t
            if digit:
                key = part * scale
                out[key] = out.get(key, 0) + digit
            mult //= t
            scale *= t
    return Partition._raw(tuple(sorted(out.items(), reverse=True)), partition.weight)


def _require_member(family: str, params, partition: Partition, check: bool) -> None:
    if not check or partition.is_empty():
        return
    if not families.membership(family, params)(partition):
        raise DomainError(
            f"partition {format_partition(partition)} is not in the "
            f"{family}{dict(params or {})} class"
        )


def genr_f_to_d(p: int, k: int, r: int, partition: Partition, check: bool = True) -> BijectionTrace:
    """Map a singleton-residue-class partition (f side) to a heavy-part
    partition (d side): parts divisible by k become (part/k)^(k*mult); the
    remaining parts pass through the inverse splitting map jointly."""
    families.normalize_params("f_pkr", {"p": p, "k": k, "r": r})
    _require_member("f_pkr", {"p": p, "k": k, "r": r}, partition, check)
    steps: list[TraceStep] = []
    scaled: dict[int, int] = {}
    residual: dict[int, int] = {}
    for part, mult in partition.pairs:
        if part % k == 0:
            key = part // k
            scaled[key] = scaled.get(key, 0) + k * mult
        else:
            residual[part] = residual.get(part, 0) + mult
    scaled_p = Partition(scaled.items())
    residual_p = Partition(residual.items())
    if not scaled_p.is_empty():
        steps.append(TraceStep("divide parts divisible by "
                               f"{k} and multiply their multiplicities by {k}", scaled_p))
    if not residual_p.is_empty():
        split = glaisher_inv(k, residual_p)
        steps.append(TraceStep(f"apply inverse splitting (base {k}) to the rest", split))
        residual_p = split
    output = scaled_p.union(residual_p)
    if check and not output.is_empty():
        _require_member("d_pkr", {"p": p, "k": k, "r": r}, output, check)
    return _trace(partition, output, steps)


def genr_d_to_f(p: int, k: int, r: int, partition: Partition, check: bool = True) -> BijectionTrace:
    """Inverse of genr_f_to_d: a part x with multiplicity s becomes
    (k*x)^(s // k) together with the split image of x^(s mod k)."""
    families.normalize_params("d_pkr", {"p": p, "k": k, "r": r})
    _require_member("d_pkr", {"p": p, "k": k, "r": r}, partition, check)
    steps: list[TraceStep] = []
    scaled: dict[int, int] = {}
    residual: dict[int, int] = {}
    for part, mult in partition.pairs:
        q, rem = divmod(mult, k)
        if q:
            key = k * part
            scaled[key] = scaled.get(key, 0) + q
        if rem:
            residual[part] = residual.get(part, 0) + rem
    scaled_p = Partition(scaled.items())
    residual_p = Partition(residual.items())
    if not scaled_p.is_empty():
        steps.append(TraceStep(f"multiply parts by {k}, dividing their multiplicities", scaled_p))
    if not residual_p.is_empty():
        merged = glaisher(k, residual_p)
        steps.append(TraceStep(f"apply the splitting map (base {k}) to leftover multiplicities", merged))
        residual_p = merged
    output = scaled_p.union(residual_p)
    if check and not output.is_empty():
        _require_member("f_pkr", {"p": p, "k": k, "r": r}, output, check)
    return _trace(partition, output, steps)


def var0_map(direction: str, r: int, partition: Partition, check: bool = True) -> BijectionTrace:
    """Specialization of the general map with p = k = 2: r = 0 pairs the
    singleton-multiples-of-4 class with the repeated-even-part class, r = 1
    the 2-mod-4 class with the repeated-odd-part class."""
    if r not in (0, 1):
        raise DomainError(f"r must be 0 or 1, got {r}")
    if direction == "forward":
        return genr_f_to_d(2, 2, r, partition, check)
    if direction == "inverse":
        return genr_d_to_f(2, 2, r, partition, check)
    raise DomainError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def dpk_to_dp(p: int, k: int, partition: Partition, check: bool = True) -> BijectionTrace:
    """Map a partition with one part repeated at least p*k times to one with
    a single heavy part divisible by p.

    Pipeline: split the heavy part j^m as j^(pkq) with remainder, convert
    j^(pkq) to (pj)^(kq), push the remainder through the splitting map in
    base pk, peel off the image parts divisible by p, divide them by p (the
    results are never divisible by k), apply the inverse splitting map in
    base k, scale back by p, and take the union.
    """
    if p < 2 or k < 2:
        raise DomainError(f"need p >= 2 and k >= 2, got p={p}, k={k}")
    pk = p * k
    _require_member("d_k", {"k": pk}, partition, check)
    if partition.is_empty():
        return _trace(partition, partition, [])
    heavy = [(part, mult) for part, mult in partition.pairs if mult >= pk]
    if len(heavy) != 1:
        raise DomainError(f"expected exactly one part with multiplicity >= {pk}")
    j, m = heavy[0]
    q, i = divmod(m, pk)
    steps: list[TraceStep] = [
        TraceStep(f"split {j}^{m} = {j}^{pk * q} + {j}^{i}", Partition(((j, pk * q),))),
    ]
    converted = Partition(((p * j, k * q),))
    steps.append(TraceStep(f"convert {j}^{pk * q} into {p * j}^{k * q}", converted))
    rest = Partition([(part, mult) for part, mult in partition.pairs if part != j] + ([(j, i)] if i else []))
    image = glaisher(pk, rest)
    steps.append(TraceStep(f"apply the splitting map (base {pk}) to the rest", image))
    keep = {part: mult for part, mult in image.pairs if part % p != 0}
    divisible = {part: mult for part, mult in image.pairs if part % p == 0}
    steps.append(TraceStep("parts of the image not divisible by "
                           f"{p}", Partition(keep.items())))
    divided: dict[int, int] = {}
    for part, mult in divisible.items():
        y = part // p
        if y % k == 0:
            raise LemmaViolation(
                f"part {part} divided by {p} is divisible by {k}; "
                "input was outside the domain or the pipeline is broken"
            )
        divided[y] = divided.get(y, 0) + mult
    beta = Partition(
        ((p * part, mult) for part, mult in glaisher_inv(k, Partition(divided.items())).pairs)
    )
    steps.append(TraceStep(f"divide the rest by {p}, apply inverse splitting "
                           f"(base {k}), multiply back by {p}", beta))
    output = converted.union(beta).union(Partition(keep.items()))
    if check:
        _require_member("d_pkr", {"p": p, "k": k, "r": 0}, output, check)
    return _trace(partition, output, steps)


def dp_to_dpk(p: int, k: int, partition: Partition, check: bool = True) -> BijectionTrace:
    """Inverse of dpk_to_dp: unconvert the heavy multiple of p, merge the
    light multiples of p through the splitting map in base k, then apply the
    inverse splitting map in base p*k to everything else."""
    if p < 2 or k < 2:
        raise DomainError(f"need p >= 2 and k >= 2, got p={p}, k={k}")
    pk = p * k
    _require_member("d_pkr", {"p": p, "k": k, "r": 0}, partition, check)
    if partition.is_empty():
        return _trace(partition, partition, [])
    heavy = [(part, mult) for part, mult in partition.pairs if part % p == 0 and mult >= k]
    if len(heavy) != 1:
        raise DomainError(f"expected exactly one part divisible by {p} with multiplicity >= {k}")
    s, m = heavy[0]
    t, f = divmod(m, k)
    steps: list[TraceStep] = [
        TraceStep(f"split {s}^{m} = {s}^{k * t} + {s}^{f}", Partition(((s, k * t),))),
    ]
    converted = Partition(((s // p, pk * t),))
    steps.append(TraceStep(f"convert {s}^{k * t} into {s // p}^{pk * t}", converted))
    light: dict[int, int] = {}
    plain: dict[int, int] = {}
    for part, mult in partition.pairs:
        if part == s:
            if f:
                light[part // p] = light.get(part // p, 0) + f
        elif part % p == 0:
            light[part // p] = light.get(part // p, 0) + mult
        else:
            plain[part] = plain.get(part, 0) + mult
    merged = glaisher(k, Partition(light.items()))
    mu_prime = Partition(((p * part, mult) for part, mult in merged.pairs))
    steps.append(TraceStep(f"divide light multiples of {p} by {p}, apply the "
                           f"splitting map (base {k}), multiply back by {p}", mu_prime))
    pooled = Partition(plain.items()).union(mu_prime)
    mu_second = glaisher_inv(pk, pooled)
    steps.append(TraceStep(f"apply inverse splitting (base {pk}) to the rest", mu_second))
    output = converted.union(mu_second)
    if check:
        _require_member("d_k", {"k": pk}, output, check)
    return _trace(partition, output, steps)


# ---------------------------------------------------------------------------
# Exhaustive verification of one (bijection, parameters, weight) cell
# ---------------------------------------------------------------------------

_CELL_KINDS = ("glaisher", "genr", "dpk", "var0")


def exhaustive_cell_check(name: str, params: dict[str, int], n: int,
                          cap: int | None = None) -> list[str]:
    """Round-trip, weight, membership, injectivity and surjectivity checks
    over the full domain class of weight n.  Returns failure descriptions
    (empty list means the cell passed)."""
    if name == "glaisher":
        t = params["t"]
        domain = families.enumerate_class("glaisher_left", n, {"t": t}, cap)
        codomain = families.enumerate_class("glaisher_right", n, {"t": t}, cap)
        forward = lambda x: glaisher(t, x)
        backward = lambda y: glaisher_inv(t, y)
    elif name == "genr":
        p, k, r = params["p"], params["k"], params["r"]
        domain = families.enumerate_class("f_pkr", n, params, cap)
        codomain = families.enumerate_class("d_pkr", n, params, cap)
        forward = lambda x: genr_f_to_d(p, k, r, x).output
        backward = lambda y: genr_d_to_f(p, k, r, y).output
    elif name == "var0":
        r = params["r"]
        domain = families.enumerate_class("f0" if r == 0 else "f2", n, cap=cap)
        codomain = families.enumerate_class("d_e" if r == 0 else "d_o", n, cap=cap)
        forward = lambda x: var0_map("forward", r, x).output
        backward = lambda y: var0_map("inverse", r, y).output
    elif name == "dpk":
        p, k = params["p"], params["k"]
        domain = families.enumerate_class("d_k", n, {"k": p * k}, cap)
        codomain = families.enumerate_class("d_pkr", n, {"p": p, "k": k, "r": 0}, cap)
        forward = lambda x: dpk_to_dp(p, k, x).output
        backward = lambda y: dp_to_dpk(p, k, y).output
    else:
        raise DomainError(f"unknown bijection {name!r}; expected one of {_CELL_KINDS}")

    failures: list[str] = []
    codomain_set = set(codomain)
    seen: set[Partition] = set()
    for source in domain:
        image = forward(source)
        if image.weight != source.weight:
            failures.append(f"weight changed: {source} -> {image}")
            continue
        if image not in codomain_set:
            failures.append(f"image outside the target class: {source} -> {image}")
            continue
        if image in seen:
            failures.append(f"not injective at {source} -> {image}")
            continue
        seen.add(image)
        back = backward(image)
        if back != source:
            failures.append(f"round trip failed: {source} -> {image} -> {back}")
    if len(seen) != len(codomain_set):
        missed = codomain_set - seen
        sample = ", ".join(str(x) for x in sorted(missed, key=str)[:3])
        failures.append(
            f"not surjective at n={n}: |image|={len(seen)} vs |class|={len(codomain_set)} (missing {sample})"
        )
    # Reversed composition on the codomain side.
    for target in codomain:
        back = backward(target)
        if back.weight != target.weight:
            failures.append(f"inverse changed weight: {target} -> {back}")
            continue
        if forward(back) != target:
            failures.append(f"reversed round trip failed at {target}")
    return failures
