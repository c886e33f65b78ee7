"""Logging and settings shared by the braess package and its experiments."""
