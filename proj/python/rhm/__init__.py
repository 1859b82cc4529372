from ._rhm import *  # noqa: F401,F403
from ._rhm import __doc__  # noqa: F401
