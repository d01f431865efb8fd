"""Loop-space models of CW complexes."""
