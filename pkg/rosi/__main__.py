from rosi.cli import main

main()
