from hindlab.cli import main

main()
