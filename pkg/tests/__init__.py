"""Test suite of the inspected Levy toolkit."""
