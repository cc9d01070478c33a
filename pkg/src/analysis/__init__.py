"""From histograms and exact distributions to witnesses with errors."""
