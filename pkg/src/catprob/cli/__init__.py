from .grammar import Workspace, parse_workspace
from .main import main, run_command
