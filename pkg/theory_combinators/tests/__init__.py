from .test_category import *
from .test_cli import *
from .test_combinators import *
from .test_context import *
from .test_doctests import *
from .test_enumeration import *
from .test_graph import *
from .test_kernel import *
from .test_parser import *
