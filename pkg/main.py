import multiprocessing
import os
import sys

# One BLAS thread per worker; parallelism comes from the process pool
for _var in ('OPENBLAS_NUM_THREADS', 'MKL_NUM_THREADS', 'OMP_NUM_THREADS', 'VECLIB_MAXIMUM_THREADS'):
    os.environ.setdefault(_var, '1')

from components.logger_config import get_logger, setup_logging

setup_logging(debug_mode=False)
logger = get_logger(__name__)


def main():
    # Worker processes are always spawned so that mpmath state is never forked
    try:
        multiprocessing.set_start_method('spawn', force=True)
    except RuntimeError:
        pass

    from cli.commands import main as cli_main

    try:
        return cli_main(standalone_mode=True)
    except SystemExit as e:
        return e.code
    except Exception as e:
        logger.error(f"Unhandled error: {e}")
        import traceback
        logger.error(traceback.format_exc())
        return 1


if __name__ == "__main__":
    multiprocessing.freeze_support()
    sys.exit(main())
