"""Covariance-matrix criteria for the wave and particle pictures."""
