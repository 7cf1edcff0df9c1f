from .bounds import *
from .codes import *
from .families import *
from .fusions import *
from .gfx import *
from .graphs import *
from .orbits import *
from .queries import *
from .stabilizers import *
from .tablebase import *
