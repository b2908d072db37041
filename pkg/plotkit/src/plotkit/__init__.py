"""Publication-style figures from simulation run outputs."""

from .figures import (FigureInputError, FigureSpec, read_histogram,
                      read_pulse, render_pdf_figure, render_triptych)

__version__ = "0.1.0"
