from argparse import ArgumentParser, Namespace
from dataclasses import dataclass, field
from typing import Any, Callable

from core.exceptions import UsageException

type Handler = Callable[[Namespace], int | None]


@dataclass(frozen=True)
class Argument:
    flags: tuple[str, ...]
    options: dict[str, Any] = field(default_factory=dict)


def argument(*flags: str, **options: Any) -> Argument:
    return Argument(flags, options)


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    handler: Handler
    arguments: tuple[Argument, ...]


class CommandParser(ArgumentParser):

    def error(self, message: str):
        raise UsageException(f'Неверное использование: {message}')


class CommandRouter:

    def __init__(self):
        self.commands: list[Command] = []

    def command(self, name: str, *, help: str, arguments: tuple[Argument, ...] = ()) -> Callable[[Handler], Handler]:
        def decorator(handler: Handler) -> Handler:
            self.commands.append(Command(name, help, handler, arguments))
            return handler

        return decorator

    def include_router(self, router: 'CommandRouter'):
        self.commands.extend(router.commands)

    def build_parser(self, prog: str) -> CommandParser:
        parser = CommandParser(prog=prog)
        subparsers = parser.add_subparsers(dest='command', required=True, parser_class=CommandParser)

        for command in self.commands:
            subparser = subparsers.add_parser(command.name, help=command.help)

            for item in command.arguments:
                subparser.add_argument(*item.flags, **item.options)

            subparser.set_defaults(handler=command.handler)

        return parser
