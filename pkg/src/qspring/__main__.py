from qspring.cli import main

main()
