"""Transaction-level equation of exchange.

An :class:`Economy` fixes the money stock ``M``, the quantity of each good
produced per period, and for each good the number of purchases ``n_g`` that
each move the whole money stock.  Prices follow from those three things
alone (``p_g = n_g * M / q_g``), so velocity ``V = sum(n_g)`` shows up on
both sides of ``M V = P T`` and drops out.

The executed exchanges are recorded in a :class:`Ledger`; the money side
(``M * velocity``) and the goods side (``sum p * q``) are computed from it
independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateBaseError, DomainError, FlowShiftError, UnknownGoodError

# Slack for the "one purchase cannot exceed M" check: q/n * (n*M/q) can land
# one ulp above M in floating point.
BUDGET_RTOL = 1e-12


@dataclass(frozen=True)
class Good:
    name: str
    quantity: float
    is_final: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.quantity) and self.quantity > 0):
            raise DomainError(f"good {self.name!r}: quantity must be positive, got {self.quantity!r}")


@dataclass(frozen=True)
class Economy:
    money_stock: float
    goods: tuple[Good, ...]
    exchanges: Mapping[str, int]
    schedule_order: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        goods = tuple(self.goods)
        exchanges = dict(self.exchanges)
        object.__setattr__(self, "goods", goods)
        object.__setattr__(self, "exchanges", exchanges)
        if not (math.isfinite(self.money_stock) and self.money_stock > 0):
            raise DomainError(f"money stock must be positive, got {self.money_stock!r}")
        names = [g.name for g in goods]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate good names in {names}")
        if set(exchanges) != set(names):
            missing = sorted(set(names) - set(exchanges))
            extra = sorted(set(exchanges) - set(names))
            if extra:
                raise UnknownGoodError(f"exchange counts given for unknown goods {extra}")
            raise DomainError(f"no exchange count for goods {missing}")
        for name, n in exchanges.items():
            if int(n) != n or n < 1:
                raise DomainError(f"exchange count for {name!r} must be an integer >= 1, got {n!r}")
            exchanges[name] = int(n)
        if self.schedule_order is not None:
            order = tuple(self.schedule_order)
            if sorted(order) != sorted(names):
                raise DomainError(f"schedule order {order} must list each good exactly once")
            object.__setattr__(self, "schedule_order", order)

    @property
    def velocity(self) -> int:
        return sum(self.exchanges.values())

    def good(self, name: str) -> Good:
        for g in self.goods:
            if g.name == name:
                return g
        raise UnknownGoodError(f"no good named {name!r}")

    @property
    def order(self) -> tuple[str, ...]:
        return self.schedule_order or tuple(g.name for g in self.goods)


@dataclass(frozen=True)
class Transaction:
    seq: int
    good: str
    quantity: float
    unit_price: float

    @property
    def money_moved(self) -> float:
        return self.quantity * self.unit_price


@dataclass(frozen=True)
class Ledger:
    transactions: tuple[Transaction, ...]
    money_stock: float

    def __post_init__(self) -> None:
        txs = tuple(self.transactions)
        object.__setattr__(self, "transactions", txs)
        for i, tx in enumerate(txs):
            if tx.seq != i:
                raise DomainError(f"transaction seq {tx.seq} at position {i}; expected {i}")
            if tx.money_moved > self.money_stock * (1 + BUDGET_RTOL):
                raise DomainError(
                    f"transaction {i} moves {tx.money_moved} but only {self.money_stock} exists"
                )

    def __len__(self) -> int:
        return len(self.transactions)


def fisher_economy() -> Economy:
    """Fisher's bread/coal/cloth economy: $5,000,000 turned over twenty times."""
    return Economy(
        money_stock=5_000_000,
        goods=(
            Good("bread", 200_000_000, is_final=True),
            Good("coal", 10_000_000, is_final=False),
            Good("cloth", 30_000_000, is_final=True),
        ),
        exchanges={"bread": 4, "coal": 10, "cloth": 6},
        # cloth makers buy coal, coal miners buy bread, bakers buy cloth, repeat
        schedule_order=("coal", "bread", "cloth"),
    )


def solve_prices(e: Economy) -> dict[str, float]:
    return {g.name: e.exchanges[g.name] * e.money_stock / g.quantity for g in e.goods}


def run_schedule(e: Economy) -> Ledger:
    """Execute every exchange, cycling through goods until each ``n_g`` is spent.

    Each exchange buys ``q_g / n_g`` units at the solved price, i.e. moves the
    entire money stock once.
    """
    prices = solve_prices(e)
    remaining = dict(e.exchanges)
    per_tx = {g.name: g.quantity / e.exchanges[g.name] for g in e.goods}
    txs: list[Transaction] = []
    while any(remaining.values()):
        for name in e.order:
            if remaining[name]:
                txs.append(Transaction(len(txs), name, per_tx[name], prices[name]))
                remaining[name] -= 1
    return Ledger(tuple(txs), e.money_stock)


def velocity(ledger: Ledger) -> float:
    if ledger.money_stock == 0:
        raise DegenerateBaseError("money stock is zero; velocity undefined")
    return math.fsum(tx.money_moved for tx in ledger.transactions) / ledger.money_stock


def goods_side(ledger: Ledger) -> float:
    return math.fsum(tx.quantity * tx.unit_price for tx in ledger.transactions)


def price_level_and_count(ledger: Ledger) -> tuple[float, float]:
    """``(P, T)`` with ``T`` the total units exchanged and ``P = goods_side / T``."""
    if not ledger.transactions:
        raise DegenerateBaseError("empty ledger has no price level")
    count = math.fsum(tx.quantity for tx in ledger.transactions)
    return goods_side(ledger) / count, count


def gdp(ledger: Ledger, e: Economy) -> float:
    """Value of transactions in final goods only."""
    final = {g.name for g in e.goods if g.is_final}
    unknown = {tx.good for tx in ledger.transactions} - {g.name for g in e.goods}
    if unknown:
        raise UnknownGoodError(f"ledger trades goods not in the economy: {sorted(unknown)}")
    return math.fsum(tx.quantity * tx.unit_price for tx in ledger.transactions if tx.good in final)


def scale_production(e: Economy, k: float) -> Economy:
    if not (k > 0 and math.isfinite(k)):
        raise DomainError(f"production scale factor must be positive, got {k!r}")
    return replace(e, goods=tuple(replace(g, quantity=g.quantity * k) for g in e.goods))


def scale_money(e: Economy, k: float) -> Economy:
    if not (k > 0 and math.isfinite(k)):
        raise DomainError(f"money scale factor must be positive, got {k!r}")
    return replace(e, money_stock=e.money_stock * k)


def scale_exchanges(e: Economy, j: int) -> Economy:
    """Multiply every exchange count by ``j``: velocity and all prices grow ``j``-fold."""
    if int(j) != j or j < 1:
        raise DomainError(f"exchange multiplier must be a positive integer, got {j!r}")
    return replace(e, exchanges={name: n * int(j) for name, n in e.exchanges.items()})


def shift_flows(e: Economy, source: str, target: str, count: int) -> Economy:
    """Move ``count`` whole-money-stock purchases from ``source`` to ``target``."""
    names = {g.name for g in e.goods}
    for name in (source, target):
        if name not in names:
            raise UnknownGoodError(f"no good named {name!r}")
    if int(count) != count or count < 1:
        raise FlowShiftError(f"shift count must be a positive integer, got {count!r}")
    if e.exchanges[source] <= count:
        raise FlowShiftError(
            f"cannot move {count} exchanges out of {source!r}: it only has {e.exchanges[source]}"
        )
    exchanges = dict(e.exchanges)
    exchanges[source] -= int(count)
    exchanges[target] += int(count)
    return replace(e, exchanges=exchanges)


def split_transactions(ledger: Ledger, parts: int) -> Ledger:
    """Divide each transaction into ``parts`` equal purchases at the same price."""
    if int(parts) != parts or parts < 1:
        raise DomainError(f"parts must be a positive integer, got {parts!r}")
    txs = []
    for tx in ledger.transactions:
        for _ in range(int(parts)):
            txs.append(Transaction(len(txs), tx.good, tx.quantity / parts, tx.unit_price))
    return Ledger(tuple(txs), ledger.money_stock)


def gdp_expenditure(
    consumption: float, investment: float, government: float, exports: float, imports: float
) -> float:
    return consumption + investment + government + (exports - imports)


@dataclass(frozen=True)
class Summary:
    money_stock: float
    velocity: float
    money_side: float
    goods_side: float
    price_level: float
    transaction_count: float
    gdp: float
    n_transactions: int
    prices: dict[str, float] = field(default_factory=dict)


def summarize(e: Economy, ledger: Ledger | None = None) -> Summary:
    ledger = ledger if ledger is not None else run_schedule(e)
    v = velocity(ledger)
    p, t = price_level_and_count(ledger)
    return Summary(
        money_stock=e.money_stock,
        velocity=v,
        money_side=e.money_stock * v,
        goods_side=goods_side(ledger),
        price_level=p,
        transaction_count=t,
        gdp=gdp(ledger, e),
        n_transactions=len(ledger),
        prices=solve_prices(e),
    )


def goods_table(e: Economy) -> list[dict[str, object]]:
    """One row per good: quantity, solved price, exchange count, total spend, final flag."""
    prices = solve_prices(e)
    return [
        {
            "good": g.name,
            "quantity": g.quantity,
            "unit_price": prices[g.name],
            "exchanges": e.exchanges[g.name],
            "total_spend": g.quantity * prices[g.name],
            "is_final": g.is_final,
        }
        for g in e.goods
    ]


def _close(a: float, b: float, rtol: float = 1e-9) -> bool:
    return math.isclose(a, b, rel_tol=rtol, abs_tol=0.0)


def check_invariants(e: Economy, probes: Sequence[float] = (0.5, 2.0, 3.0)) -> list[str]:
    """Return a description of every violated identity (empty when all hold)."""
    problems: list[str] = []
    ledger = run_schedule(e)
    s = summarize(e, ledger)
    if not _close(s.money_side, s.goods_side):
        problems.append(f"M*V = {s.money_side} but goods side = {s.goods_side}")
    if not _close(s.velocity, e.velocity):
        problems.append(f"ledger velocity {s.velocity} != sum of exchange counts {e.velocity}")
    if not _close(s.price_level * s.transaction_count, s.goods_side):
        problems.append("P*T does not reproduce the goods side")
    for tx in ledger.transactions:
        if tx.money_moved > e.money_stock * (1 + BUDGET_RTOL):
            problems.append(f"transaction {tx.seq} exceeds the money stock")
    for k in probes:
        scaled = scale_production(e, k)
        g2 = gdp(run_schedule(scaled), scaled)
        if not _close(g2, s.gdp):
            problems.append(f"GDP changed under production scaling by {k}: {s.gdp} -> {g2}")
        p2 = solve_prices(scaled)
        for name, p in s.prices.items():
            if not _close(p2[name], p / k):
                problems.append(f"price of {name} did not scale by 1/{k}")
        m2 = scale_money(e, k)
        g3 = gdp(run_schedule(m2), m2)
        if not _close(g3, s.gdp * k):
            problems.append(f"GDP not proportional to money stock under scaling by {k}")
    split = split_transactions(ledger, 3)
    if not (_close(velocity(split), s.velocity) and _close(gdp(split, e), s.gdp)):
        problems.append("splitting transactions changed an aggregate")
    return problems


def economy_from_dict(data: Mapping[str, object]) -> Economy:
    """Build an economy from the JSON layout accepted by ``simulate <file>``."""
    try:
        goods_data: Iterable[Mapping[str, object]] = data["goods"]  # type: ignore[assignment]
        goods = []
        exchanges = {}
        for item in goods_data:
            name = str(item["name"])
            goods.append(Good(name, float(item["quantity"]), bool(item.get("final", True))))  # type: ignore[arg-type]
            exchanges[name] = item["exchanges"]
        order = data.get("schedule_order")
        return Economy(
            money_stock=float(data["money_stock"]),  # type: ignore[arg-type]
            goods=tuple(goods),
            exchanges=exchanges,  # type: ignore[arg-type]
            schedule_order=tuple(order) if order is not None else None,  # type: ignore[arg-type]
        )
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed economy description: {exc!r}") from exc
