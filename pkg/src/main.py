import sys
from typing import Sequence

from pydantic import ValidationError

from core.exceptions import CommandException
from core.methods.lifespan import Lifespan
from core.middleware.logger import LoggerMiddleware
from general.routers import router


def main(argv: Sequence[str] | None = None) -> int:
    parser = router.build_parser('widthforge')

    with Lifespan.run():
        try:
            arguments = parser.parse_args(argv)
            return LoggerMiddleware.dispatch(arguments, arguments.handler) or 0
        except CommandException as error:
            print(error.detail, file=sys.stderr)
            return error.exit_code
        except ValidationError as error:
            print(f'Необрабатываемая сущность: {error}', file=sys.stderr)
            return 2
        except Exception:
            print('Внутренняя ошибка', file=sys.stderr)
            return 1


if __name__ == '__main__':
    sys.exit(main())
