"""grc - exact subdistribution matrices, aggregation and entropy accounting
for generalized reversible computing."""

__version__ = "0.1.0"
