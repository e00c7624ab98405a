"""Periodic equal-disk packings on flat tori: jamming, tilings, density gaps."""

__version__ = "0.1.0"
