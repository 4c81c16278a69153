"""Python surface of the front-propagation laboratory."""

from _frontlab import *  # noqa: F401,F403
from _frontlab import __doc__  # noqa: F401
