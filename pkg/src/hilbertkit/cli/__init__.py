from .config import RunConfig, load_params_json
from .main import main, run, build_parser
