"""Monte Carlo generators: the simulated experiment and the classical references."""
