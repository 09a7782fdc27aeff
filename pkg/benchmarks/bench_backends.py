"""Compare the numba and numpy expansion backends on domination graphs.

Builds the full domination graph for a batch of seeded random games under
each backend and reports best-of-N wall time. Both passes must produce
identical graphs; the script asserts that before printing anything.

Usage:
    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --agents 9 --density 0.8 --games 20
"""

import argparse
import time

from stabledec import (
    available_backends,
    full_domination_graph,
    random_game,
    use_backend,
)


def build_all(games):
    total_nodes = total_edges = 0
    for g in games:
        G = full_domination_graph(g)
        total_nodes += len(G)
        total_edges += G.edge_count()
    return total_nodes, total_edges


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--agents", type=int, default=11)
    ap.add_argument("--density", type=float, default=0.35)
    ap.add_argument("--games", type=int, default=8)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    games = [
        random_game(args.agents, density=args.density, seed=args.seed + k)
        for k in range(args.games)
    ]

    sizes = {}
    times = {}
    for backend in available_backends():
        use_backend(backend)
        build_all(games)  # warm up (jit compile, caches)
        runs = []
        for _ in range(args.repeats):
            start = time.perf_counter()
            sizes[backend] = build_all(games)
            runs.append(time.perf_counter() - start)
        times[backend] = min(runs)

    assert len(set(sizes.values())) == 1, f"backends disagree: {sizes}"
    nodes, edges = sizes[backend]

    print(
        f"{args.games} games, {args.agents} agents, density {args.density}: "
        f"{nodes} nodes, {edges} edges total"
    )
    for backend in available_backends():
        print(f"  {backend:<6} {times[backend] * 1000:8.1f} ms")
    fast, slow = min(times.values()), max(times.values())
    if fast > 0:
        print(f"  speedup {slow / fast:.2f}x")


if __name__ == "__main__":
    main()
