"""How the agent chooses a move: a step-by-step expected-payoff walkthrough.

The agent holds four smoothed cooperation probabilities, one per previous
joint outcome, and compares two candidate courses of action two turns deep:
cooperate now then defect on the fictive final turn, or defect twice.
Everything is exact rational arithmetic, so the comparison below matches
the engine digit for digit.
"""

from fractions import Fraction

from predipd import Action, JointOutcome, DEFAULT_PAYOFFS, OpponentModel, decide
from predipd.predictor import FixedModel, expected_payoff_coop, expected_payoff_defect

PM = DEFAULT_PAYOFFS

print("1) A generous opponent, previous turn CD (we cooperated, they defected).")
model = FixedModel((Fraction(1), Fraction(1), Fraction(1, 8), Fraction(1, 4)))
state = JointOutcome.CD
coop = expected_payoff_coop(model, state, PM)
defect = expected_payoff_defect(model, state, PM)
print(f"   cooperate-then-defect : {coop} = {float(coop):.3f}")
print(f"   defect-then-defect    : {defect} = {float(defect):.3f}")
print(f"   decision: {decide(model, state, PM)}  (patience pays against forgiveness)")
print()

print("2) A fresh, maximally uncertain model (every estimate 1/2).")
fresh = OpponentModel.fresh()
for state in (JointOutcome.CC, JointOutcome.DD):
    coop = expected_payoff_coop(fresh, state, PM)
    defect = expected_payoff_defect(fresh, state, PM)
    print(f"   from {state}: coop {coop} vs defect {defect} -> {decide(fresh, state, PM)}")
print("   With no information, defection dominates.")
print()

print("3) Learning flips the decision.")
model = OpponentModel.fresh()
state = JointOutcome.CC
print(f"   fresh model from CC           -> {decide(model, state, PM)}")
for _ in range(5):
    model = model.observe(JointOutcome.CC, Action.C)   # rewards cooperation
    model = model.observe(JointOutcome.DC, Action.D)   # punishes defection
p = model.probability(JointOutcome.CC)
print(f"   after seeing a reciprocator (p(C|CC) = {p}) -> {decide(model, state, PM)}")
