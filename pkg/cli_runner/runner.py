"""
The `geophase <subcommand> [options]` entry point. Every subcommand is the
cli_runner management command of the same name with underscores.
"""
import os
import sys

EXIT_OK = 0
EXIT_USAGE = 2


def run(argv) -> int:
    """Run one subcommand and return its process exit status"""
    from django.core.management import load_command_class
    from .config import SUBCOMMANDS

    usage = f"usage: geophase {{{','.join(SUBCOMMANDS)}}} [options]\n"
    if not argv or argv[0] not in SUBCOMMANDS:
        if argv and argv[0] in ('-h', '--help'):
            sys.stdout.write(usage)
            return EXIT_OK
        sys.stderr.write(usage)
        if argv:
            sys.stderr.write(f"geophase: unknown subcommand {argv[0]!r}\n")
        return EXIT_USAGE

    name = argv[0].replace('-', '_')
    command = load_command_class('cli_runner', name)
    try:
        command.run_from_argv(['geophase', name] + list(argv[1:]))
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return EXIT_OK
        return code if isinstance(code, int) else 1
    return EXIT_OK


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'geophase.settings')
    import django
    django.setup()
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
