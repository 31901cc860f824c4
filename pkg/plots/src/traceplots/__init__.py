"""Figure regeneration for attitude-consensus simulation outputs.

Consumes the simulator's documented trace CSV, companion trigger CSV and
metrics JSON; never imports simulation code.
"""

from .render import (KINDS, FigureSpec, SchemaError, agent_count,
                     default_figure_set, read_csv_columns, read_metrics,
                     render)

__version__ = "0.1.0"
