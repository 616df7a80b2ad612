"""Curve reparametrization toolkit: arclength invariants, equidistributing spacing, resampling."""
