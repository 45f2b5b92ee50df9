"""Round-robin tournament: the learning agent against the classic field.

Runs the default tournament (nine memory-one strategies plus PREDICTOR,
five iterations of 200-turn matches per pairing) and prints the final
standings.  Rerunning with the same seed reproduces every number exactly.
"""

from predipd import MatchConfig, default_roster, run_round_robin

result = run_round_robin(default_roster(p_exp=0.1), MatchConfig(n_turns=200),
                         n_iter=5, master_seed=0)

print(f"{'rank':>4}  {'strategy':<12} {'average':>8} {'stderr':>8} {'wins':>5} {'ties':>5}")
for rank, name in enumerate(result.ranking, start=1):
    print(f"{rank:>4}  {name:<12} {result.averages[name]:>8.3f} "
          f"{result.standard_errors[name]:>8.3f} {result.wins[name]:>5} "
          f"{result.ties[name]:>5}")

print()
print("Head-to-head means (row player's payoff):")
names = sorted(result.roster)
print(" " * 12 + "".join(f"{n[:7]:>8}" for n in names))
for a in names:
    row = "".join(f"{result.pair_means[(a, b)]:>8.2f}" for b in names)
    print(f"{a:<12}{row}")
