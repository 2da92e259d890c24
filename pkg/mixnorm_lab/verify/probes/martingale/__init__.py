"""
Martingale probes: conditional expectations, Doob's maximal function,
martingale approximation and Fatou ladders.
"""
