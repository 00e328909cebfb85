"""Packaged default configuration files (one per detection case and
collective state). All reconstructed model constants live here, not in
code."""
