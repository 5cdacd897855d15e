"""Classification of two-generator subgroups of SO(3)."""
