"""Secrecy performance of a spectrum-sharing small-cell downlink with
unreliable wireless backhaul: closed-form analytics, asymptotics, numerical
integration for the optimal-selection scheme, and Monte Carlo simulation."""

__version__ = "0.1.0"
