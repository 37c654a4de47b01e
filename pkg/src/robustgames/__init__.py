"""Exact-arithmetic toolkit for robust play against an adversarial nature.

Solution concepts (loss aversion and its relatives) over finite
agent-vs-nature games, plus mechanism testbeds: discrete first-price
and all-pay auctions, a Sybil-attacked combinatorial VCG auction,
facility location under the mean rule, and positional-scoring voting.
All arithmetic is rational; every closed form ships with an independent
brute-force cross-check.
"""

__version__ = "0.1.0"
