from scox.cli import main

main()
