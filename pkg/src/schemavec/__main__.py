from schemavec.cli import main

main()
