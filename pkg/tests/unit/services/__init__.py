"""
Unit tests for services (rate model, master equation, sweeps, acceptance suite)
"""
