import time
from argparse import Namespace
from typing import Callable

from loguru import logger

from core.exceptions import CommandException


class LoggerMiddleware:

    @staticmethod
    def dispatch(arguments: Namespace, call_next: Callable[[Namespace], int | None]) -> int | None:
        start_time = time.perf_counter_ns()
        options = {key: value for key, value in vars(arguments).items() if key != 'handler'}

        try:
            result = call_next(arguments)
        except CommandException as error:
            logger.warning(
                f'Команда отклонена: {error.detail}. '
                f'Command({arguments.command}; {options}). '
                f'Код выхода: {error.exit_code}'
            )

            raise error
        except Exception as error:
            logger.exception(
                f'Ошибка в команде: {error}. '
                f'Command({arguments.command}; {options}). '
                f'Время исполнения: {int((time.perf_counter_ns() - start_time) / 1_000_000)} мс'
            )

            raise error

        logger.debug(
            f'Команда выполнена. '
            f'Command({arguments.command}; {options}). '
            f'Время исполнения: {int((time.perf_counter_ns() - start_time) / 1_000_000)} мс'
        )

        return result
