# Command-line front end
from src.cli.options import (
    Command,
    CliInvocation,
    build_parser,
    parse_invocation,
)
from src.cli.app import (
    run,
    main,
)
