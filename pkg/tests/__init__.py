# Hindman Lab Test Suite
"""
Test suite for the Hindman Lab engine.

This test suite includes:
- Unit tests for exact rationals, families and colorings
- Unit tests for classical pattern searches and thresholds
- Unit tests for perturbations, shifts and stabilizers
- Unit tests for the consistent-vector builder and witness routes
- Property-based tests of the exact identities
- Integration tests for the CLI and the API endpoints
"""
