"""Test suite for the zero-shot sound event classification package."""
