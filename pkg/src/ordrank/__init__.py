"""Ranks and definable ranks of linear orders, ordered abelian groups and
Hahn series fields, with a bounded Ehrenfeucht-Fraisse engine for cuts."""

__version__ = "0.1.0"
