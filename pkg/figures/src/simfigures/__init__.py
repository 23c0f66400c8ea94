"""Figure regeneration for constrained-tracking simulation logs.

Consumes the simulator's CSV log (its schema is the only coupling to the
simulator) and renders the five standard result figures as SVG files.
"""

from .render import (FIGURE_IDS, EmptyLogError, FigureSpec,
                     MissingColumnError, load_log, render, render_all)

__version__ = "0.1.0"
