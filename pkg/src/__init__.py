"""Customized-poling designer for mid-infrared entangled photon-pair sources in lithium niobate."""

__version__ = "0.1.0"
