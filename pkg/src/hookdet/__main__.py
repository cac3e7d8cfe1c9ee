from hookdet.cli import main

main()
