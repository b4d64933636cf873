"""Shared fixtures: baseline scenario used throughout the test suite."""

from secrecynet.model import FadingParams, SystemConfig


def fading_from_mean_gains_db(sd=3.0, se=-3.0, sr=-3.0, td=-6.0, te=6.0, tr=3.0):
    """FadingParams from mean channel gains in dB (rate = reciprocal mean)."""
    lam = lambda db: 10.0 ** (-db / 10.0)
    return FadingParams(lambda_sd=lam(sd), lambda_se=lam(se), lambda_sr=lam(sr),
                        lambda_td=lam(td), lambda_te=lam(te), lambda_tr=lam(tr))


def make_cfg(K=2, backhaul_reliability=0.99, primary_qos=0.1, primary_rate=0.5,
             secrecy_threshold=0.5, gamma_T=100.0, fading=None, se_db=-3.0):
    if fading is None:
        fading = fading_from_mean_gains_db(se=se_db)
    return SystemConfig(K=K, backhaul_reliability=backhaul_reliability,
                        primary_qos=primary_qos, primary_rate=primary_rate,
                        secrecy_threshold=secrecy_threshold, gamma_T=gamma_T,
                        fading=fading)
